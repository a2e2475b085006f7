//! Affine spacetime primitives: events, displacements, the absolute clock
//! projection and the Minkowski quadratic form.
//!
//! Points (`Event`) and displacements (`FourVector`) are kept distinct on
//! purpose: only differences of events are ever fed to the quadratic form,
//! and only displacements can be added to events. Coordinates are ordered
//! `(x, y, z, t)`, so the time axis is component 3 throughout the crate.

use nalgebra::{Matrix4, Vector3, Vector4};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Errors from spacetime-level operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpacetimeError {
    /// Two events were required to lie on the same simultaneity sheet.
    #[error("events are not simultaneous: clock readings differ by {dt:e}")]
    NotSimultaneous { dt: f64 },
}

/// A point of affine spacetime in inertial coordinates `(x, y, z, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

/// A displacement between two events, `(dx, dy, dz, dt)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
    pub dt: f64,
}

/// A reading of the absolute clock, i.e. the time coordinate of an event.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Instant(pub f64);

impl Event {
    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        Self { x, y, z, t }
    }

    pub fn origin() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Rebuilds an event from a spatial position and a clock reading.
    pub fn from_parts(spatial: Vector3<f64>, t: f64) -> Self {
        Self::new(spatial.x, spatial.y, spatial.z, t)
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn to_vector4(self) -> Vector4<f64> {
        Vector4::new(self.x, self.y, self.z, self.t)
    }

    pub fn from_vector4(v: Vector4<f64>) -> Self {
        Self::new(v.x, v.y, v.z, v.w)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.t.is_finite()
    }
}

impl FourVector {
    pub fn new(dx: f64, dy: f64, dz: f64, dt: f64) -> Self {
        Self { dx, dy, dz, dt }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn from_parts(spatial: Vector3<f64>, dt: f64) -> Self {
        Self::new(spatial.x, spatial.y, spatial.z, dt)
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.dx, self.dy, self.dz)
    }

    pub fn to_vector4(self) -> Vector4<f64> {
        Vector4::new(self.dx, self.dy, self.dz, self.dt)
    }

    pub fn from_vector4(v: Vector4<f64>) -> Self {
        Self::new(v.x, v.y, v.z, v.w)
    }

    /// Euclidean norm of all four components; used for relative tolerances.
    pub fn euclidean_norm(&self) -> f64 {
        self.to_vector4().norm()
    }

    pub fn is_finite(&self) -> bool {
        self.dx.is_finite() && self.dy.is_finite() && self.dz.is_finite() && self.dt.is_finite()
    }
}

impl Sub for Event {
    type Output = FourVector;

    fn sub(self, rhs: Event) -> FourVector {
        FourVector::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z, self.t - rhs.t)
    }
}

impl Add<FourVector> for Event {
    type Output = Event;

    fn add(self, rhs: FourVector) -> Event {
        Event::new(self.x + rhs.dx, self.y + rhs.dy, self.z + rhs.dz, self.t + rhs.dt)
    }
}

impl Sub<FourVector> for Event {
    type Output = Event;

    fn sub(self, rhs: FourVector) -> Event {
        Event::new(self.x - rhs.dx, self.y - rhs.dy, self.z - rhs.dz, self.t - rhs.dt)
    }
}

impl Add for FourVector {
    type Output = FourVector;

    fn add(self, rhs: FourVector) -> FourVector {
        FourVector::new(self.dx + rhs.dx, self.dy + rhs.dy, self.dz + rhs.dz, self.dt + rhs.dt)
    }
}

impl Sub for FourVector {
    type Output = FourVector;

    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector::new(self.dx - rhs.dx, self.dy - rhs.dy, self.dz - rhs.dz, self.dt - rhs.dt)
    }
}

impl Neg for FourVector {
    type Output = FourVector;

    fn neg(self) -> FourVector {
        FourVector::new(-self.dx, -self.dy, -self.dz, -self.dt)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;

    fn mul(self, s: f64) -> FourVector {
        FourVector::new(self.dx * s, self.dy * s, self.dz * s, self.dt * s)
    }
}

impl Div<f64> for FourVector {
    type Output = FourVector;

    fn div(self, s: f64) -> FourVector {
        FourVector::new(self.dx / s, self.dy / s, self.dz / s, self.dt / s)
    }
}

/// The displacement carrying `q` to `q2`, i.e. `q2 - q`.
pub fn displacement(q: Event, q2: Event) -> FourVector {
    q2 - q
}

/// Translates an event by a displacement.
pub fn translate(q: Event, v: FourVector) -> Event {
    q + v
}

/// The Minkowski form `Q(v) = dx^2 + dy^2 + dz^2 - dt^2` in units where the
/// reference speed is 1. Negative on timelike displacements, zero on light
/// rays, positive on spacelike ones.
pub fn quadratic_form(v: FourVector) -> f64 {
    v.dx * v.dx + v.dy * v.dy + v.dz * v.dz - v.dt * v.dt
}

/// The Minkowski quadratic form together with its Gram matrix
/// `diag(+1, +1, +1, -1)` in the `(x, y, z, t)` ordering.
///
/// The Gram matrix is fixed; this type exists so that code validating
/// Lorentz matrices can spell the congruence `L^T G L = G` against the same
/// `G` the rest of the crate evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    gram: Matrix4<f64>,
}

impl QuadraticForm {
    /// The canonical form of signature `(3, 1)`.
    pub fn minkowski() -> Self {
        Self {
            gram: Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0)),
        }
    }

    pub fn gram(&self) -> &Matrix4<f64> {
        &self.gram
    }

    /// Evaluates the form as `v^T G v`.
    pub fn evaluate(&self, v: FourVector) -> f64 {
        let col = v.to_vector4();
        (col.transpose() * self.gram * col)[(0, 0)]
    }
}

impl Default for QuadraticForm {
    fn default() -> Self {
        Self::minkowski()
    }
}

/// Projects an event onto the absolute clock.
pub fn clock_project(q: Event) -> Instant {
    Instant(q.t)
}

/// Absolute elapsed clock time between two events, `|t2 - t1|`.
pub fn duration(q: Event, q2: Event) -> f64 {
    (q2.t - q.t).abs()
}

/// Whether two events lie on the same simultaneity sheet within `tol`.
pub fn are_simultaneous(q: Event, q2: Event, tol: f64) -> bool {
    (q2.t - q.t).abs() <= tol
}

/// Euclidean distance between two events on a common simultaneity sheet.
///
/// The distance is evaluated on the spatial parts; translation invariance
/// makes the answer independent of which representative sheet the pair is
/// carried to, which is what licenses a single formula for every sheet.
pub fn sheet_distance(q: Event, q2: Event, tol: f64) -> Result<f64, SpacetimeError> {
    if !are_simultaneous(q, q2, tol) {
        return Err(SpacetimeError::NotSimultaneous { dt: q2.t - q.t });
    }
    Ok((q2.spatial() - q.spatial()).norm())
}
