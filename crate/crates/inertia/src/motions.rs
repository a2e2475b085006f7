//! Inertial motions as affine lines in spacetime: canonical representatives,
//! classification in Galilean and Minkowski mechanics, the group action on
//! lines, and proper time along piecewise-inertial worldlines.
//!
//! Lines are stored in a canonical form so that equality of motions is
//! decidable: a line transverse to the simultaneity sheets is normalized to
//! `direction.dt = 1` with its base point on the `t = 0` sheet; an
//! instantaneous line gets a unit spatial direction with a fixed sign and a
//! base point orthogonal to it. Two parametrizations of the same line then
//! canonicalize to identical field values.

use crate::groups::SpacetimeAction;
use crate::spacetime::{Event, FourVector, quadratic_form};
use nalgebra::Vector3;
use std::fmt;
use thiserror::Error;

/// Relative tolerance for deciding "on the light cone" in classification.
pub const TOL_CLASS: f64 = 1e-12;

/// Errors from motion and worldline construction and measurement.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MotionError {
    #[error("direction must not be the zero vector")]
    ZeroDirection,

    #[error("non-finite {what}")]
    NonFinite { what: &'static str },

    #[error("worldline needs at least 2 vertices, got {count}")]
    TooFewVertices { count: usize },

    #[error("vertex {index}: field `t` must be strictly increasing")]
    NonMonotoneTime { index: usize },

    #[error("segment {index} is spacelike: no proper time along it")]
    SpacelikeSegment { index: usize },

    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
}

/// An affine line in spacetime, held in canonical form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertialMotion {
    base: Event,
    direction: FourVector,
}

/// Classification tags. Galilean mechanics uses the first three, Minkowski
/// mechanics the last three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotionClass {
    Resting,
    UniformFinite,
    InstantaneousLight,
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for MotionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MotionClass::Resting => "resting",
            MotionClass::UniformFinite => "uniform-finite",
            MotionClass::InstantaneousLight => "instantaneous-light",
            MotionClass::Spacelike => "spacelike",
            MotionClass::Timelike => "timelike",
            MotionClass::Lightlike => "lightlike",
        };
        f.write_str(name)
    }
}

/// Which mechanics a classification or orbit question refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanics {
    Galilean,
    Minkowski,
}

impl InertialMotion {
    /// Builds the canonical representative of the line through `base` with
    /// direction `direction`.
    pub fn new(base: Event, direction: FourVector) -> Result<Self, MotionError> {
        if !base.is_finite() {
            return Err(MotionError::NonFinite { what: "base event" });
        }
        if !direction.is_finite() {
            return Err(MotionError::NonFinite { what: "direction" });
        }
        if direction == FourVector::zero() {
            return Err(MotionError::ZeroDirection);
        }
        if direction.dt != 0.0 {
            let d = direction / direction.dt;
            if !d.is_finite() {
                return Err(MotionError::NonFinite { what: "normalized direction" });
            }
            // Slide the base point along the line onto the t = 0 sheet;
            // with d.dt = 1 this zeroes base.t exactly.
            let b = base + d * (-base.t);
            Ok(Self { base: b, direction: d })
        } else {
            let sp = direction.spatial();
            let mut u = sp / sp.norm();
            if let Some(first) = u.iter().find(|x| **x != 0.0)
                && *first < 0.0
            {
                u = -u;
            }
            // Slide the base point to the foot of the perpendicular so the
            // representative does not depend on where the line was sampled.
            let b = base.spatial() - base.spatial().dot(&u) * u;
            Ok(Self {
                base: Event::from_parts(b, base.t),
                direction: FourVector::from_parts(u, 0.0),
            })
        }
    }

    pub fn base(&self) -> Event {
        self.base
    }

    pub fn direction(&self) -> FourVector {
        self.direction
    }

    /// The point `base + s * direction`.
    pub fn point_at(&self, s: f64) -> Event {
        self.base + self.direction * s
    }
}

/// The motion of a particle sitting at `r0` at time 0 and moving with
/// constant velocity `v`: base `(r0, 0)`, direction `(v, 1)`.
pub fn motion_from_state(r0: Vector3<f64>, v: Vector3<f64>) -> InertialMotion {
    InertialMotion::new(
        Event::from_parts(r0, 0.0),
        FourVector::from_parts(v, 1.0),
    )
    .expect("a direction with dt = 1 is canonical")
}

/// Inverse of [`motion_from_state`] on transverse motions; `None` for
/// instantaneous lines, which carry no (position, velocity) state.
pub fn state_from_motion(m: &InertialMotion) -> Option<(Vector3<f64>, Vector3<f64>)> {
    if m.direction.dt == 0.0 {
        return None;
    }
    Some((m.base.spatial(), m.direction.spatial()))
}

/// Transports a motion by a group element and re-canonicalizes the image.
pub fn act_motion<G: SpacetimeAction>(g: &G, m: &InertialMotion) -> InertialMotion {
    InertialMotion::new(g.act_event(m.base), g.act_vector(m.direction))
        .expect("invertible linear parts keep directions nonzero")
}

/// Galilean classification: exact on canonical representatives.
pub fn classify_galilean(m: &InertialMotion) -> MotionClass {
    if m.direction.dt == 0.0 {
        MotionClass::InstantaneousLight
    } else if m.direction.spatial() == Vector3::zeros() {
        MotionClass::Resting
    } else {
        MotionClass::UniformFinite
    }
}

/// Minkowski classification by the sign of the quadratic form on the
/// direction, with a band of width `TOL_CLASS` (relative to the squared
/// Euclidean size of the direction) counted as lightlike.
pub fn classify_minkowski(m: &InertialMotion) -> MotionClass {
    let q = quadratic_form(m.direction);
    let scale = m.direction.to_vector4().norm_squared();
    if q.abs() <= TOL_CLASS * scale {
        MotionClass::Lightlike
    } else if q > 0.0 {
        MotionClass::Spacelike
    } else {
        MotionClass::Timelike
    }
}

/// The class label that is constant on orbits of the mechanics' inertia
/// group.
///
/// In Galilean mechanics a boost carries a resting motion to a uniform one,
/// so rest is not an orbit invariant: every transverse line belongs to the
/// single orbit labeled `UniformFinite`, and only transversality survives as
/// an invariant. In Minkowski mechanics the three causal classes are exactly
/// the orbits.
pub fn orbit_invariant(m: &InertialMotion, mechanics: Mechanics) -> MotionClass {
    match mechanics {
        Mechanics::Galilean => {
            if m.direction.dt == 0.0 {
                MotionClass::InstantaneousLight
            } else {
                MotionClass::UniformFinite
            }
        }
        Mechanics::Minkowski => classify_minkowski(m),
    }
}

/// A future-directed piecewise-inertial worldline.
#[derive(Debug, Clone, PartialEq)]
pub struct Worldline {
    vertices: Vec<Event>,
}

impl Worldline {
    pub fn new(vertices: Vec<Event>) -> Result<Self, MotionError> {
        if vertices.len() < 2 {
            return Err(MotionError::TooFewVertices { count: vertices.len() });
        }
        for (index, v) in vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(MotionError::NonFinite { what: "vertex" });
            }
            if index > 0 && v.t <= vertices[index - 1].t {
                return Err(MotionError::NonMonotoneTime { index });
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Event] {
        &self.vertices
    }

    /// Elapsed coordinate time from first to last vertex.
    pub fn total_duration(&self) -> f64 {
        self.vertices[self.vertices.len() - 1].t - self.vertices[0].t
    }

    /// Accumulated proper time: the sum over segments of
    /// `sqrt(max(0, -Q(delta)))`. A segment whose form value exceeds
    /// `tol * |delta|^2` (squared Euclidean size) is spacelike and rejected.
    pub fn proper_time(&self, tol: f64) -> Result<f64, MotionError> {
        let mut total = 0.0;
        for (index, pair) in self.vertices.windows(2).enumerate() {
            let delta = pair[1] - pair[0];
            let q = quadratic_form(delta);
            let scale = delta.to_vector4().norm_squared();
            if q > tol * scale {
                return Err(MotionError::SpacelikeSegment { index });
            }
            total += (-q).max(0.0).sqrt();
        }
        Ok(total)
    }

    /// Applies a group element to every vertex and re-validates. A boost can
    /// reorder the clock readings of a non-causal chain, in which case the
    /// image is rejected as non-monotone.
    pub fn transform<G: SpacetimeAction>(&self, g: &G) -> Result<Worldline, MotionError> {
        Worldline::new(self.vertices.iter().map(|q| g.act_event(*q)).collect())
    }

    /// CSV with header `t,x,y,z`, one vertex per row. Numbers are written in
    /// shortest round-trip form, so parsing the output reproduces the exact
    /// vertices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,z\n");
        for v in &self.vertices {
            out.push_str(&format!("{},{},{},{}\n", v.t, v.x, v.y, v.z));
        }
        out
    }

    /// Parses the CSV format of [`Worldline::to_csv`]. Errors name the
    /// offending line and field.
    pub fn from_csv(text: &str) -> Result<Worldline, MotionError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == "t,x,y,z" => {}
            Some((_, header)) => {
                return Err(MotionError::Csv {
                    line: 1,
                    message: format!("header must be `t,x,y,z`, got `{}`", header.trim()),
                });
            }
            None => {
                return Err(MotionError::Csv { line: 1, message: "empty input".to_string() });
            }
        }
        let mut vertices = Vec::new();
        for (i, row) in lines {
            let line = i + 1;
            if row.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != 4 {
                return Err(MotionError::Csv {
                    line,
                    message: format!("expected 4 fields `t,x,y,z`, got {}", fields.len()),
                });
            }
            let mut parsed = [0.0f64; 4];
            for (value, (name, slot)) in
                fields.iter().zip(["t", "x", "y", "z"].iter().zip(parsed.iter_mut()))
            {
                *slot = value.trim().parse().map_err(|_| MotionError::Csv {
                    line,
                    message: format!("field `{name}` is not a number: `{}`", value.trim()),
                })?;
                if !slot.is_finite() {
                    return Err(MotionError::Csv {
                        line,
                        message: format!("field `{name}` must be finite"),
                    });
                }
            }
            vertices.push(Event::new(parsed[1], parsed[2], parsed[3], parsed[0]));
        }
        Worldline::new(vertices).map_err(|e| match e {
            MotionError::NonMonotoneTime { index } => MotionError::Csv {
                // Rows follow the header, so vertex k sits on line k + 2.
                line: index + 2,
                message: "field `t` must be strictly increasing".to_string(),
            },
            MotionError::TooFewVertices { count } => MotionError::Csv {
                line: 1,
                message: format!("worldline needs at least 2 rows, got {count}"),
            },
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GalileiElement, GroupPolicy, PoincareElement, TimeSign, make_aristotle};
    use crate::sample;
    use approx::assert_relative_eq;
    use nalgebra::Matrix3;

    fn line_residual(p: Event, m: &InertialMotion) -> f64 {
        let w = (p - m.base()).to_vector4();
        let u = m.direction().to_vector4();
        let s = w.dot(&u) / u.dot(&u);
        (w - s * u).norm()
    }

    #[test]
    fn state_round_trip_is_exact() {
        let r0 = Vector3::new(1.0, 0.0, 0.0);
        let v = Vector3::new(0.0, 2.0, 0.0);
        let m = motion_from_state(r0, v);
        assert_eq!(m.base(), Event::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(m.direction(), FourVector::new(0.0, 2.0, 0.0, 1.0));
        assert_eq!(state_from_motion(&m), Some((r0, v)));
    }

    #[test]
    fn transverse_parametrizations_share_one_canonical_form() {
        let a = InertialMotion::new(
            Event::new(1.0, 2.0, 3.0, 4.0),
            FourVector::new(0.0, 0.0, 0.0, 2.0),
        )
        .unwrap();
        let b = InertialMotion::new(
            Event::new(1.0, 2.0, 3.0, 9.0),
            FourVector::new(0.0, 0.0, 0.0, -1.0),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.base().t, 0.0);
    }

    #[test]
    fn instantaneous_parametrizations_share_one_canonical_form() {
        let a = InertialMotion::new(
            Event::new(1.0, 2.0, 3.0, 4.0),
            FourVector::new(2.0, 0.0, 0.0, 0.0),
        )
        .unwrap();
        let b = InertialMotion::new(
            Event::new(-5.0, 2.0, 3.0, 4.0),
            FourVector::new(-1.0, 0.0, 0.0, 0.0),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.direction(), FourVector::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(a.base(), Event::new(0.0, 2.0, 3.0, 4.0));
    }

    #[test]
    fn zero_direction_is_rejected() {
        let err = InertialMotion::new(Event::origin(), FourVector::zero()).unwrap_err();
        assert_eq!(err, MotionError::ZeroDirection);
    }

    #[test]
    fn galilean_classification() {
        let rest = motion_from_state(Vector3::zeros(), Vector3::zeros());
        assert_eq!(classify_galilean(&rest), MotionClass::Resting);
        let uniform = InertialMotion::new(
            Event::origin(),
            FourVector::new(1.0, 0.0, 0.0, 1.0),
        )
        .unwrap();
        assert_eq!(classify_galilean(&uniform), MotionClass::UniformFinite);
        let flash = InertialMotion::new(
            Event::origin(),
            FourVector::new(1.0, 0.0, 0.0, 0.0),
        )
        .unwrap();
        assert_eq!(classify_galilean(&flash), MotionClass::InstantaneousLight);
    }

    #[test]
    fn minkowski_classification() {
        let of = |d: FourVector| {
            classify_minkowski(&InertialMotion::new(Event::origin(), d).unwrap())
        };
        assert_eq!(of(FourVector::new(0.0, 0.0, 0.0, 1.0)), MotionClass::Timelike);
        assert_eq!(of(FourVector::new(1.0, 0.0, 0.0, 0.0)), MotionClass::Spacelike);
        assert_eq!(of(FourVector::new(0.6, 0.0, 0.0, 0.6)), MotionClass::Lightlike);
    }

    #[test]
    fn galilei_boost_carries_rest_to_uniform_motion() {
        let r = Vector3::new(2.0, -1.0, 0.5);
        let rest = motion_from_state(r, Vector3::zeros());
        let b = Vector3::new(0.7, 0.0, -0.2);
        let g = GalileiElement::boost(b).unwrap();
        let moved = act_motion(&g, &rest);
        assert_eq!(moved, motion_from_state(r, b));
        assert_eq!(classify_galilean(&rest), MotionClass::Resting);
        assert_eq!(classify_galilean(&moved), MotionClass::UniformFinite);
    }

    #[test]
    fn aristotle_elements_preserve_rest() {
        let g = make_aristotle(
            Matrix3::identity(),
            Vector3::new(1.0, 2.0, 3.0),
            4.0,
            TimeSign::Forward,
            GroupPolicy::default(),
        )
        .unwrap();
        let rest = motion_from_state(Vector3::new(0.5, 0.5, 0.5), Vector3::zeros());
        assert_eq!(classify_galilean(&act_motion(&g, &rest)), MotionClass::Resting);
    }

    #[test]
    fn lorentz_boost_keeps_light_lines_on_the_cone() {
        let light = InertialMotion::new(
            Event::origin(),
            FourVector::new(1.0, 0.0, 0.0, 1.0),
        )
        .unwrap();
        let g = PoincareElement::boost(Vector3::new(0.6, 0.0, 0.0)).unwrap();
        let image = act_motion(&g, &light);
        assert_eq!(classify_minkowski(&image), MotionClass::Lightlike);
    }

    #[test]
    fn images_of_sample_points_land_on_the_image_line() {
        let mut rng = sample::rng(23);
        for _ in 0..50 {
            let m = InertialMotion::new(
                sample::event(&mut rng, 5.0),
                FourVector::from_vector4(sample::vector4(&mut rng, 2.0)),
            );
            let Ok(m) = m else { continue };
            let g = sample::poincare(&mut rng);
            let image = act_motion(&g, &m);
            for s in [-1.0, 0.0, 1.0, 2.0] {
                let p = g.act_event(m.point_at(s));
                assert!(line_residual(p, &image) <= 1e-10);
            }
        }
    }

    #[test]
    fn orbit_invariants() {
        let rest = motion_from_state(Vector3::zeros(), Vector3::zeros());
        assert_eq!(orbit_invariant(&rest, Mechanics::Galilean), MotionClass::UniformFinite);
        let flash = InertialMotion::new(
            Event::origin(),
            FourVector::new(0.0, 1.0, 0.0, 0.0),
        )
        .unwrap();
        assert_eq!(
            orbit_invariant(&flash, Mechanics::Galilean),
            MotionClass::InstantaneousLight
        );
        let timelike = motion_from_state(Vector3::zeros(), Vector3::new(0.3, 0.0, 0.0));
        assert_eq!(orbit_invariant(&timelike, Mechanics::Minkowski), MotionClass::Timelike);

        let mut rng = sample::rng(29);
        for _ in 0..50 {
            let m = motion_from_state(sample::vector3(&mut rng, 5.0), sample::beta(&mut rng, 0.95));
            let g = sample::poincare(&mut rng);
            assert_eq!(
                orbit_invariant(&act_motion(&g, &m), Mechanics::Minkowski),
                orbit_invariant(&m, Mechanics::Minkowski)
            );
            let h = sample::galilei(&mut rng);
            assert_eq!(
                orbit_invariant(&act_motion(&h, &m), Mechanics::Galilean),
                orbit_invariant(&m, Mechanics::Galilean)
            );
        }
    }

    #[test]
    fn proper_time_of_rest_light_and_twin_legs() {
        let rest = Worldline::new(vec![Event::origin(), Event::new(0.0, 0.0, 0.0, 1.0)]).unwrap();
        assert_eq!(rest.proper_time(TOL_CLASS).unwrap(), 1.0);

        let light = Worldline::new(vec![Event::origin(), Event::new(1.0, 0.0, 0.0, 1.0)]).unwrap();
        assert_eq!(light.proper_time(TOL_CLASS).unwrap(), 0.0);

        let twin = Worldline::new(vec![
            Event::origin(),
            Event::new(3.0, 0.0, 0.0, 5.0),
            Event::new(0.0, 0.0, 0.0, 10.0),
        ])
        .unwrap();
        assert_relative_eq!(twin.proper_time(TOL_CLASS).unwrap(), 8.0, epsilon = 1e-12);
        assert!(twin.proper_time(TOL_CLASS).unwrap() < twin.total_duration());
    }

    #[test]
    fn spacelike_segments_are_rejected() {
        let w = Worldline::new(vec![Event::origin(), Event::new(2.0, 0.0, 0.0, 1.0)]).unwrap();
        assert_eq!(w.proper_time(TOL_CLASS), Err(MotionError::SpacelikeSegment { index: 0 }));
    }

    #[test]
    fn proper_time_never_exceeds_coordinate_duration() {
        let mut rng = sample::rng(31);
        for _ in 0..50 {
            let w = Worldline::new(sample::causal_vertices(&mut rng, 6)).unwrap();
            let tau = w.proper_time(TOL_CLASS).unwrap();
            assert!(tau <= w.total_duration() + 1e-12);
        }
    }

    #[test]
    fn proper_time_is_poincare_invariant() {
        let mut rng = sample::rng(37);
        for _ in 0..50 {
            let w = Worldline::new(sample::causal_vertices(&mut rng, 5)).unwrap();
            let g = sample::poincare(&mut rng);
            let moved = w.transform(&g).unwrap();
            assert_relative_eq!(
                moved.proper_time(TOL_CLASS).unwrap(),
                w.proper_time(TOL_CLASS).unwrap(),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn worldline_validation() {
        assert_eq!(
            Worldline::new(vec![Event::origin()]),
            Err(MotionError::TooFewVertices { count: 1 })
        );
        assert_eq!(
            Worldline::new(vec![Event::origin(), Event::origin()]),
            Err(MotionError::NonMonotoneTime { index: 1 })
        );
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let w = Worldline::new(vec![
            Event::new(0.1, -0.25, 3e-7, 0.0),
            Event::new(1.0 / 3.0, std::f64::consts::FRAC_1_SQRT_2, -2.5, 1.5),
        ])
        .unwrap();
        assert_eq!(Worldline::from_csv(&w.to_csv()).unwrap(), w);
    }

    #[test]
    fn csv_errors_name_line_and_field() {
        let bad_header = "x,y,z,t\n0,0,0,0\n1,0,0,0\n";
        assert!(matches!(
            Worldline::from_csv(bad_header),
            Err(MotionError::Csv { line: 1, .. })
        ));
        let bad_number = "t,x,y,z\n0,0,0,0\n1,zero,0,0\n";
        let err = Worldline::from_csv(bad_number).unwrap_err();
        match err {
            MotionError::Csv { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("`x`"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        let non_monotone = "t,x,y,z\n0,0,0,0\n1,1,0,0\n0.5,2,0,0\n";
        let err = Worldline::from_csv(non_monotone).unwrap_err();
        match err {
            MotionError::Csv { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("`t`"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
