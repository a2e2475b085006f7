//! The three inertia groups as validated matrix groups acting on affine
//! spacetime.
//!
//! An Aristotle element is a rigid spatial motion plus a clock shift, a
//! Galilei element adds a boost velocity coupling space to time, and a
//! Poincare element is a Lorentz matrix plus a spacetime translation. Every
//! constructor validates its matrix data against the group equations at an
//! explicit tolerance; composition re-validates the product. Floating-point
//! drift is never repaired silently: if a matrix has decayed past tolerance
//! the caller must go through [`renormalize_rotation`] or
//! [`renormalize_lorentz`] and state that intent in code.
//!
//! By default only the identity component is admitted (orientation and time
//! direction preserving; for Lorentz matrices, proper orthochronous). The
//! full groups, with reflections and time reversal, are opted into through
//! [`GroupMode::FullGroup`].

use crate::linalg::polar_unitary3;
use crate::spacetime::{Event, FourVector, QuadraticForm};
use nalgebra::{Matrix3, Matrix4, Matrix5, Vector3, Vector4};
use std::fmt;
use std::ops::Mul;
use thiserror::Error;

/// Default validation tolerance for group-membership residuals.
pub const TOL_GROUP: f64 = 1e-9;

/// Errors raised by element validation and composition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    /// The spatial matrix is not orthogonal within tolerance.
    #[error("matrix is not orthogonal: residual {residual:e}")]
    NotOrthogonal { residual: f64 },

    /// The matrix fails the Lorentz congruence `L^T G L = G` within tolerance.
    #[error("matrix is not Lorentz: congruence residual {residual:e}")]
    NotLorentz { residual: f64 },

    /// The element is valid in the full group but not in the identity
    /// component the current policy admits.
    #[error("element is outside the identity component: {reason}")]
    NotIdentityComponent { reason: String },

    /// A boost velocity reached or exceeded the speed of light.
    #[error("boost speed {speed} is not below 1")]
    SuperluminalBeta { speed: f64 },

    /// Composition of families with no common containing group here.
    #[error("cannot compose Galilei and Poincare elements")]
    MixedFamilies,

    /// Input data contained NaN or infinity.
    #[error("non-finite entries in {what}")]
    NonFinite { what: &'static str },

    /// A matrix was too degenerate to validate or renormalize.
    #[error("degenerate input: {what}")]
    Degenerate { what: &'static str },
}

/// Which part of the group a policy admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupMode {
    /// Orientation preserving, future preserving (proper orthochronous).
    IdentityComponent,
    /// All four components: reflections and time reversal allowed.
    FullGroup,
}

/// Validation policy carried by every element: residual tolerance plus the
/// admitted group component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupPolicy {
    pub tol: f64,
    pub mode: GroupMode,
}

impl Default for GroupPolicy {
    fn default() -> Self {
        Self { tol: TOL_GROUP, mode: GroupMode::IdentityComponent }
    }
}

impl GroupPolicy {
    pub fn full_group() -> Self {
        Self { mode: GroupMode::FullGroup, ..Self::default() }
    }

    /// Policy under which a product of elements with these policies is
    /// checked: the looser tolerance and the wider component.
    pub fn combine(self, other: Self) -> Self {
        let mode = if self.mode == GroupMode::FullGroup || other.mode == GroupMode::FullGroup {
            GroupMode::FullGroup
        } else {
            GroupMode::IdentityComponent
        };
        Self { tol: self.tol.max(other.tol), mode }
    }
}

/// Direction of time in an Aristotle or Galilei element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeSign {
    Forward,
    Reversed,
}

impl TimeSign {
    pub fn factor(self) -> f64 {
        match self {
            TimeSign::Forward => 1.0,
            TimeSign::Reversed => -1.0,
        }
    }

    pub fn from_factor(s: f64) -> Option<Self> {
        if s == 1.0 {
            Some(TimeSign::Forward)
        } else if s == -1.0 {
            Some(TimeSign::Reversed)
        } else {
            None
        }
    }
}

impl Mul for TimeSign {
    type Output = TimeSign;

    fn mul(self, rhs: TimeSign) -> TimeSign {
        if self == rhs { TimeSign::Forward } else { TimeSign::Reversed }
    }
}

impl fmt::Display for TimeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factor() as i64)
    }
}

/// Checks a 3x3 matrix against `A^T A = I` and, in identity-component mode,
/// `det A = +1`, at the policy tolerance.
pub fn validate_rotation(m: &Matrix3<f64>, policy: GroupPolicy) -> Result<(), GroupError> {
    if !m.iter().all(|x| x.is_finite()) {
        return Err(GroupError::NonFinite { what: "rotation matrix" });
    }
    let residual = (m.transpose() * m - Matrix3::identity()).amax();
    if residual > policy.tol {
        return Err(GroupError::NotOrthogonal { residual });
    }
    if policy.mode == GroupMode::IdentityComponent {
        let det = m.determinant();
        if (det - 1.0).abs() > policy.tol {
            return Err(GroupError::NotIdentityComponent {
                reason: format!("determinant {det} is not +1"),
            });
        }
    }
    Ok(())
}

/// Checks a 4x4 matrix against the congruence `L^T G L = G` with
/// `G = diag(1, 1, 1, -1)`, and in identity-component mode also
/// `det L = +1` and `L[3][3] >= 1` (orthochronous), at the policy tolerance.
pub fn validate_lorentz(m: &Matrix4<f64>, policy: GroupPolicy) -> Result<(), GroupError> {
    if !m.iter().all(|x| x.is_finite()) {
        return Err(GroupError::NonFinite { what: "Lorentz matrix" });
    }
    let g = *QuadraticForm::minkowski().gram();
    let residual = (m.transpose() * g * m - g).amax();
    if residual > policy.tol {
        return Err(GroupError::NotLorentz { residual });
    }
    if policy.mode == GroupMode::IdentityComponent {
        let det = m.determinant();
        if (det - 1.0).abs() > policy.tol {
            return Err(GroupError::NotIdentityComponent {
                reason: format!("determinant {det} is not +1"),
            });
        }
        let corner = m[(3, 3)];
        if corner < 1.0 - policy.tol {
            return Err(GroupError::NotIdentityComponent {
                reason: format!("time orientation reversed: L[3][3] = {corner}"),
            });
        }
    }
    Ok(())
}

/// A validated orthogonal 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    m: Matrix3<f64>,
}

impl Rotation3 {
    pub fn new(m: Matrix3<f64>, policy: GroupPolicy) -> Result<Self, GroupError> {
        validate_rotation(&m, policy)?;
        Ok(Self { m })
    }

    pub(crate) fn new_unchecked(m: Matrix3<f64>) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self { m: Matrix3::identity() }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }
}

/// A validated Lorentz matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix {
    m: Matrix4<f64>,
}

impl LorentzMatrix {
    pub fn new(m: Matrix4<f64>, policy: GroupPolicy) -> Result<Self, GroupError> {
        validate_lorentz(&m, policy)?;
        Ok(Self { m })
    }

    pub(crate) fn new_unchecked(m: Matrix4<f64>) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self { m: Matrix4::identity() }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    /// The exact group inverse `G L^T G`.
    pub fn inverse(&self) -> Self {
        let g = *QuadraticForm::minkowski().gram();
        Self { m: g * self.m.transpose() * g }
    }
}

/// The pure boost with velocity `beta`, as a symmetric Lorentz matrix:
/// identity block plus `(k - 1)` along the boost axis, `k * beta` coupling
/// row and column, and corner `k = 1 / sqrt(1 - |beta|^2)`.
///
/// `beta = 0` returns the exact identity.
pub fn standard_boost(beta: Vector3<f64>) -> Result<LorentzMatrix, GroupError> {
    if !beta.iter().all(|x| x.is_finite()) {
        return Err(GroupError::NonFinite { what: "boost velocity" });
    }
    let speed = beta.norm();
    if speed >= 1.0 {
        return Err(GroupError::SuperluminalBeta { speed });
    }
    if speed == 0.0 {
        return Ok(LorentzMatrix::identity());
    }
    let k = 1.0 / (1.0 - beta.dot(&beta)).sqrt();
    let n = beta / speed;
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(0, 0)
        .copy_from(&(Matrix3::identity() + (k - 1.0) * n * n.transpose()));
    m.fixed_view_mut::<3, 1>(0, 3).copy_from(&(k * beta));
    m.fixed_view_mut::<1, 3>(3, 0).copy_from(&(k * beta.transpose()));
    m[(3, 3)] = k;
    LorentzMatrix::new(m, GroupPolicy::default())
}

/// The factorization of a Lorentz matrix into a velocity shear and a
/// spatial block: `L = [[1, beta], [beta^T, 1]] * [[B^-1, 0], [0, a]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostDecomposition {
    /// Velocity read off the last column, `beta = b / a`; always `|beta| < 1`.
    pub beta: Vector3<f64>,
    /// `B`, the inverse of the upper-left 3x3 block of `L`; satisfies
    /// `B^T B + beta beta^T = I`.
    pub rot_inverse: Matrix3<f64>,
    /// `a = L[3][3]`, equal to `1 / sqrt(1 - beta . beta)` up to sign.
    pub time_factor: f64,
}

/// Reads the unique shear-times-block factorization off a validated Lorentz
/// matrix. Never fails: the corner entry of a Lorentz matrix has modulus at
/// least 1 and the spatial block is invertible.
pub fn boost_decompose(l: &LorentzMatrix) -> BoostDecomposition {
    let m = l.matrix();
    let a = m[(3, 3)];
    let b = Vector3::new(m[(0, 3)], m[(1, 3)], m[(2, 3)]);
    let beta = b / a;
    let top = m.fixed_view::<3, 3>(0, 0).into_owned();
    let rot_inverse = top
        .try_inverse()
        .expect("spatial block of a Lorentz matrix is invertible");
    BoostDecomposition { beta, rot_inverse, time_factor: a }
}

impl BoostDecomposition {
    /// Multiplies the two factors back together.
    pub fn reconstruct(&self) -> Matrix4<f64> {
        let binv = self
            .rot_inverse
            .try_inverse()
            .expect("decomposition block is invertible");
        shear_factor(&self.beta) * spatial_block(&binv, self.time_factor)
    }
}

/// `[[I, beta], [beta^T, 1]]`.
fn shear_factor(beta: &Vector3<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 1>(0, 3).copy_from(beta);
    m.fixed_view_mut::<1, 3>(3, 0).copy_from(&beta.transpose());
    m
}

/// `diag(block, corner)` as a 4x4 matrix.
fn spatial_block(block: &Matrix3<f64>, corner: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(block);
    m[(3, 3)] = corner;
    m
}

/// Projects a drifted spatial matrix back onto the orthogonal group and
/// re-validates it. This is the only sanctioned repair for accumulated
/// floating-point error in rotations.
pub fn renormalize_rotation(m: &Matrix3<f64>, policy: GroupPolicy) -> Result<Rotation3, GroupError> {
    if !m.iter().all(|x| x.is_finite()) {
        return Err(GroupError::NonFinite { what: "rotation matrix" });
    }
    let o = polar_unitary3(m).ok_or(GroupError::Degenerate { what: "singular rotation candidate" })?;
    Rotation3::new(o, policy)
}

/// Repairs a drifted Lorentz candidate: reads `beta` off the last column,
/// peels off the exact standard boost, polar-projects the spatial remainder
/// and multiplies back. Fails if the candidate is superluminal or too
/// degenerate for the factors to be read off.
pub fn renormalize_lorentz(m: &Matrix4<f64>, policy: GroupPolicy) -> Result<LorentzMatrix, GroupError> {
    if !m.iter().all(|x| x.is_finite()) {
        return Err(GroupError::NonFinite { what: "Lorentz matrix" });
    }
    let a = m[(3, 3)];
    if a == 0.0 {
        return Err(GroupError::Degenerate { what: "zero corner entry" });
    }
    let beta = Vector3::new(m[(0, 3)], m[(1, 3)], m[(2, 3)]) / a;
    let boost = standard_boost(beta)?;
    let rest = boost.inverse().matrix() * m;
    let r = rest.fixed_view::<3, 3>(0, 0).into_owned();
    let o = polar_unitary3(&r).ok_or(GroupError::Degenerate { what: "singular spatial remainder" })?;
    let eps = if rest[(3, 3)] >= 0.0 { 1.0 } else { -1.0 };
    LorentzMatrix::new(boost.matrix() * spatial_block(&o, eps), policy)
}

/// Common action of group elements on events and displacements.
pub trait SpacetimeAction {
    fn act_event(&self, q: Event) -> Event;

    /// The linear part, acting on displacements between events.
    fn act_vector(&self, v: FourVector) -> FourVector;
}

/// A rigid spatial motion plus a clock shift: `(r, t) -> (A r + C, s t + e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AristotleElement {
    rotation: Rotation3,
    translation: Vector3<f64>,
    time_translation: f64,
    time_sign: TimeSign,
    policy: GroupPolicy,
}

/// Validates and assembles an Aristotle element.
pub fn make_aristotle(
    a: Matrix3<f64>,
    c: Vector3<f64>,
    e: f64,
    sign: TimeSign,
    policy: GroupPolicy,
) -> Result<AristotleElement, GroupError> {
    validate_rotation(&a, policy)?;
    if !c.iter().all(|x| x.is_finite()) || !e.is_finite() {
        return Err(GroupError::NonFinite { what: "translation data" });
    }
    if policy.mode == GroupMode::IdentityComponent && sign == TimeSign::Reversed {
        return Err(GroupError::NotIdentityComponent {
            reason: "time reversal requires full-group mode".to_string(),
        });
    }
    Ok(AristotleElement {
        rotation: Rotation3::new_unchecked(a),
        translation: c,
        time_translation: e,
        time_sign: sign,
        policy,
    })
}

impl AristotleElement {
    pub fn identity() -> Self {
        Self {
            rotation: Rotation3::identity(),
            translation: Vector3::zeros(),
            time_translation: 0.0,
            time_sign: TimeSign::Forward,
            policy: GroupPolicy::default(),
        }
    }

    pub fn rotation(&self) -> &Rotation3 {
        &self.rotation
    }

    pub fn translation(&self) -> Vector3<f64> {
        self.translation
    }

    pub fn time_translation(&self) -> f64 {
        self.time_translation
    }

    pub fn time_sign(&self) -> TimeSign {
        self.time_sign
    }

    pub fn policy(&self) -> GroupPolicy {
        self.policy
    }

    /// Group law; the product is re-validated under the combined policy.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        let policy = self.policy.combine(other.policy);
        let a = self.rotation.matrix() * other.rotation.matrix();
        let c = self.rotation.matrix() * other.translation + self.translation;
        let e = self.time_sign.factor() * other.time_translation + self.time_translation;
        make_aristotle(a, c, e, self.time_sign * other.time_sign, policy)
    }

    /// Exact group inverse `(A^T, -A^T C, -s e, s)`.
    pub fn inverse(&self) -> Self {
        let at = self.rotation.matrix().transpose();
        let s = self.time_sign.factor();
        Self {
            rotation: Rotation3::new_unchecked(at),
            translation: -(at * self.translation),
            time_translation: -s * self.time_translation,
            time_sign: self.time_sign,
            policy: self.policy,
        }
    }

    /// The element as a 5x5 matrix acting on `(x, y, z, t, 1)`.
    pub fn to_homogeneous(&self) -> Matrix5<f64> {
        embed_aristotle(self).to_homogeneous()
    }
}

impl SpacetimeAction for AristotleElement {
    fn act_event(&self, q: Event) -> Event {
        let r = self.rotation.matrix() * q.spatial() + self.translation;
        Event::from_parts(r, self.time_sign.factor() * q.t + self.time_translation)
    }

    fn act_vector(&self, v: FourVector) -> FourVector {
        let dr = self.rotation.matrix() * v.spatial();
        FourVector::from_parts(dr, self.time_sign.factor() * v.dt)
    }
}

/// A Galilei element `(r, t) -> (A r + B t + C, s t + e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GalileiElement {
    rotation: Rotation3,
    boost_velocity: Vector3<f64>,
    translation: Vector3<f64>,
    time_translation: f64,
    time_sign: TimeSign,
    policy: GroupPolicy,
}

/// Validates and assembles a Galilei element. The boost velocity is not
/// speed-limited; it only has to be finite.
pub fn make_galilei(
    a: Matrix3<f64>,
    b: Vector3<f64>,
    c: Vector3<f64>,
    e: f64,
    sign: TimeSign,
    policy: GroupPolicy,
) -> Result<GalileiElement, GroupError> {
    validate_rotation(&a, policy)?;
    if !b.iter().all(|x| x.is_finite()) {
        return Err(GroupError::NonFinite { what: "boost velocity" });
    }
    if !c.iter().all(|x| x.is_finite()) || !e.is_finite() {
        return Err(GroupError::NonFinite { what: "translation data" });
    }
    if policy.mode == GroupMode::IdentityComponent && sign == TimeSign::Reversed {
        return Err(GroupError::NotIdentityComponent {
            reason: "time reversal requires full-group mode".to_string(),
        });
    }
    Ok(GalileiElement {
        rotation: Rotation3::new_unchecked(a),
        boost_velocity: b,
        translation: c,
        time_translation: e,
        time_sign: sign,
        policy,
    })
}

/// Views an Aristotle element as the Galilei element with zero boost.
pub fn embed_aristotle(g: &AristotleElement) -> GalileiElement {
    GalileiElement {
        rotation: g.rotation,
        boost_velocity: Vector3::zeros(),
        translation: g.translation,
        time_translation: g.time_translation,
        time_sign: g.time_sign,
        policy: g.policy,
    }
}

impl GalileiElement {
    pub fn identity() -> Self {
        embed_aristotle(&AristotleElement::identity())
    }

    /// A pure boost with velocity `b`.
    pub fn boost(b: Vector3<f64>) -> Result<Self, GroupError> {
        make_galilei(
            Matrix3::identity(),
            b,
            Vector3::zeros(),
            0.0,
            TimeSign::Forward,
            GroupPolicy::default(),
        )
    }

    pub fn rotation(&self) -> &Rotation3 {
        &self.rotation
    }

    pub fn boost_velocity(&self) -> Vector3<f64> {
        self.boost_velocity
    }

    pub fn translation(&self) -> Vector3<f64> {
        self.translation
    }

    pub fn time_translation(&self) -> f64 {
        self.time_translation
    }

    pub fn time_sign(&self) -> TimeSign {
        self.time_sign
    }

    pub fn policy(&self) -> GroupPolicy {
        self.policy
    }

    /// Group law
    /// `(A1 A2, A1 B2 + s2 B1, A1 C2 + e2 B1 + C1, s1 e2 + e1, s1 s2)`,
    /// re-validated under the combined policy.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        let policy = self.policy.combine(other.policy);
        let a = self.rotation.matrix() * other.rotation.matrix();
        let b = self.rotation.matrix() * other.boost_velocity
            + other.time_sign.factor() * self.boost_velocity;
        let c = self.rotation.matrix() * other.translation
            + other.time_translation * self.boost_velocity
            + self.translation;
        let e = self.time_sign.factor() * other.time_translation + self.time_translation;
        make_galilei(a, b, c, e, self.time_sign * other.time_sign, policy)
    }

    /// Exact group inverse.
    pub fn inverse(&self) -> Self {
        let at = self.rotation.matrix().transpose();
        let s = self.time_sign.factor();
        Self {
            rotation: Rotation3::new_unchecked(at),
            boost_velocity: -s * (at * self.boost_velocity),
            translation: s * self.time_translation * (at * self.boost_velocity)
                - at * self.translation,
            time_translation: -s * self.time_translation,
            time_sign: self.time_sign,
            policy: self.policy,
        }
    }

    /// The element as a 5x5 matrix acting on `(x, y, z, t, 1)`.
    pub fn to_homogeneous(&self) -> Matrix5<f64> {
        let mut h = Matrix5::identity();
        h.fixed_view_mut::<3, 3>(0, 0).copy_from(self.rotation.matrix());
        h.fixed_view_mut::<3, 1>(0, 3).copy_from(&self.boost_velocity);
        h.fixed_view_mut::<3, 1>(0, 4).copy_from(&self.translation);
        h[(3, 3)] = self.time_sign.factor();
        h[(3, 4)] = self.time_translation;
        h
    }
}

impl SpacetimeAction for GalileiElement {
    fn act_event(&self, q: Event) -> Event {
        let r = self.rotation.matrix() * q.spatial() + self.boost_velocity * q.t + self.translation;
        Event::from_parts(r, self.time_sign.factor() * q.t + self.time_translation)
    }

    fn act_vector(&self, v: FourVector) -> FourVector {
        let dr = self.rotation.matrix() * v.spatial() + self.boost_velocity * v.dt;
        FourVector::from_parts(dr, self.time_sign.factor() * v.dt)
    }
}

/// A Poincare element `x -> L x + C` on `(x, y, z, t)` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PoincareElement {
    lorentz: LorentzMatrix,
    translation: Vector4<f64>,
    policy: GroupPolicy,
}

/// Validates and assembles a Poincare element.
pub fn make_poincare(
    l: Matrix4<f64>,
    c: Vector4<f64>,
    policy: GroupPolicy,
) -> Result<PoincareElement, GroupError> {
    validate_lorentz(&l, policy)?;
    if !c.iter().all(|x| x.is_finite()) {
        return Err(GroupError::NonFinite { what: "translation data" });
    }
    Ok(PoincareElement { lorentz: LorentzMatrix::new_unchecked(l), translation: c, policy })
}

impl PoincareElement {
    pub fn identity() -> Self {
        Self {
            lorentz: LorentzMatrix::identity(),
            translation: Vector4::zeros(),
            policy: GroupPolicy::default(),
        }
    }

    /// A pure standard boost as a Poincare element.
    pub fn boost(beta: Vector3<f64>) -> Result<Self, GroupError> {
        Ok(Self {
            lorentz: standard_boost(beta)?,
            translation: Vector4::zeros(),
            policy: GroupPolicy::default(),
        })
    }

    pub fn lorentz(&self) -> &LorentzMatrix {
        &self.lorentz
    }

    pub fn translation(&self) -> Vector4<f64> {
        self.translation
    }

    pub fn policy(&self) -> GroupPolicy {
        self.policy
    }

    /// Group law `(L1 L2, L1 C2 + C1)`, re-validated under the combined
    /// policy.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        let policy = self.policy.combine(other.policy);
        let l = self.lorentz.matrix() * other.lorentz.matrix();
        let c = self.lorentz.matrix() * other.translation + self.translation;
        make_poincare(l, c, policy)
    }

    /// Exact group inverse `(G L^T G, -G L^T G C)`.
    pub fn inverse(&self) -> Self {
        let li = self.lorentz.inverse();
        Self {
            translation: -(li.matrix() * self.translation),
            lorentz: li,
            policy: self.policy,
        }
    }

    /// The element as a 5x5 matrix acting on `(x, y, z, t, 1)`.
    pub fn to_homogeneous(&self) -> Matrix5<f64> {
        let mut h = Matrix5::identity();
        h.fixed_view_mut::<4, 4>(0, 0).copy_from(self.lorentz.matrix());
        h.fixed_view_mut::<4, 1>(0, 4).copy_from(&self.translation);
        h
    }
}

impl SpacetimeAction for PoincareElement {
    fn act_event(&self, q: Event) -> Event {
        Event::from_vector4(self.lorentz.matrix() * q.to_vector4() + self.translation)
    }

    fn act_vector(&self, v: FourVector) -> FourVector {
        FourVector::from_vector4(self.lorentz.matrix() * v.to_vector4())
    }
}

/// An element of any of the three families, for code that dispatches on the
/// family at runtime (the CLI does).
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Aristotle(AristotleElement),
    Galilei(GalileiElement),
    Poincare(PoincareElement),
}

impl Element {
    pub fn family(&self) -> &'static str {
        match self {
            Element::Aristotle(_) => "aristotle",
            Element::Galilei(_) => "galilei",
            Element::Poincare(_) => "poincare",
        }
    }

    /// Composes two elements, promoting Aristotle to Galilei when the
    /// families are mixed. Galilei and Poincare do not mix.
    pub fn compose(&self, other: &Element) -> Result<Element, GroupError> {
        use Element::*;
        match (self, other) {
            (Aristotle(a), Aristotle(b)) => Ok(Aristotle(a.compose(b)?)),
            (Aristotle(a), Galilei(b)) => Ok(Galilei(embed_aristotle(a).compose(b)?)),
            (Galilei(a), Aristotle(b)) => Ok(Galilei(a.compose(&embed_aristotle(b))?)),
            (Galilei(a), Galilei(b)) => Ok(Galilei(a.compose(b)?)),
            (Poincare(a), Poincare(b)) => Ok(Poincare(a.compose(b)?)),
            _ => Err(GroupError::MixedFamilies),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Aristotle(g) => Element::Aristotle(g.inverse()),
            Element::Galilei(g) => Element::Galilei(g.inverse()),
            Element::Poincare(g) => Element::Poincare(g.inverse()),
        }
    }

    pub fn to_homogeneous(&self) -> Matrix5<f64> {
        match self {
            Element::Aristotle(g) => g.to_homogeneous(),
            Element::Galilei(g) => g.to_homogeneous(),
            Element::Poincare(g) => g.to_homogeneous(),
        }
    }
}

impl SpacetimeAction for Element {
    fn act_event(&self, q: Event) -> Event {
        match self {
            Element::Aristotle(g) => g.act_event(q),
            Element::Galilei(g) => g.act_event(q),
            Element::Poincare(g) => g.act_event(q),
        }
    }

    fn act_vector(&self, v: FourVector) -> FourVector {
        match self {
            Element::Aristotle(g) => g.act_vector(v),
            Element::Galilei(g) => g.act_vector(v),
            Element::Poincare(g) => g.act_vector(v),
        }
    }
}
