//! Deterministic seeded samplers for rotations, boosts, group elements,
//! events and causal worldlines.
//!
//! The verification oracles and the acceptance suite draw their random
//! trials from here. Each trial derives its own sub-generator from
//! `(seed, index)`, so runs are reproducible and independent of evaluation
//! order.

use crate::groups::{
    AristotleElement, GalileiElement, GroupPolicy, LorentzMatrix, PoincareElement, TimeSign,
    make_aristotle, make_galilei, make_poincare, standard_boost,
};
use crate::spacetime::Event;
use nalgebra::{Matrix3, Matrix4, Unit, Vector3, Vector4};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Root generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sub-generator for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Uniform point of the unit sphere, by rejection from the cube.
pub fn unit_vector3(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Random proper rotation from a uniform axis and angle.
pub fn rotation(rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    let axis = Unit::new_normalize(unit_vector3(rng));
    let angle = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    nalgebra::Rotation3::from_axis_angle(&axis, angle).into_inner()
}

/// Random velocity with norm below `max_speed`.
pub fn beta(rng: &mut ChaCha8Rng, max_speed: f64) -> Vector3<f64> {
    unit_vector3(rng) * rng.random_range(0.0..max_speed)
}

/// Random proper orthochronous Lorentz matrix: a product of up to five
/// standard boosts (speed at most 0.9) and rotations.
pub fn lorentz(rng: &mut ChaCha8Rng) -> LorentzMatrix {
    let factors = rng.random_range(1..=5);
    let mut m = Matrix4::identity();
    for _ in 0..factors {
        if rng.random_bool(0.5) {
            m *= standard_boost(beta(rng, 0.9)).expect("subluminal").matrix();
        } else {
            let mut r = Matrix4::identity();
            r.fixed_view_mut::<3, 3>(0, 0).copy_from(&rotation(rng));
            m *= r;
        }
    }
    LorentzMatrix::new(m, GroupPolicy::default()).expect("product of Lorentz factors")
}

pub fn vector3(rng: &mut ChaCha8Rng, scale: f64) -> Vector3<f64> {
    Vector3::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

pub fn vector4(rng: &mut ChaCha8Rng, scale: f64) -> Vector4<f64> {
    Vector4::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

pub fn event(rng: &mut ChaCha8Rng, scale: f64) -> Event {
    Event::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

pub fn aristotle(rng: &mut ChaCha8Rng) -> AristotleElement {
    make_aristotle(
        rotation(rng),
        vector3(rng, 10.0),
        rng.random_range(-10.0..10.0),
        TimeSign::Forward,
        GroupPolicy::default(),
    )
    .expect("sampled data is valid")
}

pub fn galilei(rng: &mut ChaCha8Rng) -> GalileiElement {
    make_galilei(
        rotation(rng),
        vector3(rng, 3.0),
        vector3(rng, 10.0),
        rng.random_range(-10.0..10.0),
        TimeSign::Forward,
        GroupPolicy::default(),
    )
    .expect("sampled data is valid")
}

pub fn poincare(rng: &mut ChaCha8Rng) -> PoincareElement {
    make_poincare(*lorentz(rng).matrix(), vector4(rng, 10.0), GroupPolicy::default())
        .expect("sampled data is valid")
}

/// Random future-directed causal chain of `segments + 1` events: every
/// segment has `|dr| <= 0.9 dt`, so it is strictly timelike.
pub fn causal_vertices(rng: &mut ChaCha8Rng, segments: usize) -> Vec<Event> {
    let mut vertices = vec![event(rng, 5.0)];
    for _ in 0..segments {
        let dt = rng.random_range(0.5..2.0);
        let dr = unit_vector3(rng) * rng.random_range(0.0..0.9) * dt;
        let prev = *vertices.last().expect("nonempty");
        vertices.push(Event::from_parts(prev.spatial() + dr, prev.t + dt));
    }
    vertices
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::validate_rotation;

    #[test]
    fn trials_are_reproducible() {
        let a = rotation(&mut trial_rng(7, 3));
        let b = rotation(&mut trial_rng(7, 3));
        assert_eq!(a, b);
        let c = rotation(&mut trial_rng(7, 4));
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_rotations_validate() {
        let mut r = rng(11);
        for _ in 0..50 {
            validate_rotation(&rotation(&mut r), GroupPolicy::default()).unwrap();
        }
    }

    #[test]
    fn sampled_lorentz_matrices_validate() {
        let mut r = rng(13);
        for _ in 0..50 {
            lorentz(&mut r);
        }
    }

    #[test]
    fn causal_chains_have_increasing_time() {
        let mut r = rng(17);
        let vs = causal_vertices(&mut r, 10);
        assert_eq!(vs.len(), 11);
        for pair in vs.windows(2) {
            assert!(pair[1].t > pair[0].t);
            let d = pair[1] - pair[0];
            assert!(crate::spacetime::quadratic_form(d) < 0.0);
        }
    }
}
