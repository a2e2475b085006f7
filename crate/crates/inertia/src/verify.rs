//! Executable oracles for the structural theorems behind the three
//! mechanics: the characterization of Euclidean isometries, the absence of a
//! group-compatible "space" in Galilean kinematics, the absence of a
//! group-compatible "time" in relativistic kinematics, and the breaking of
//! simultaneity by boosts.
//!
//! Every oracle reduces its theorem to a finite linear-algebra computation
//! and returns an [`OracleReport`] with a machine-checkable witness. Finite
//! generator sets suffice for the group-level statements: a line (or
//! subspace) carried to itself by each generator is carried to itself by
//! every product and inverse of generators, so if even the subgroup
//! generated by our finite set admits no invariant line, the full group
//! certainly admits none. The negative results therefore only get stronger
//! when more group elements are considered, while the positive controls
//! (the rotations-only line, the Galilei clock homomorphism) are verified
//! directly on random samples.

use crate::groups::{GalileiElement, GroupError, PoincareElement, SpacetimeAction};
use crate::linalg::{
    RANK_CUTOFF, numerical_rank, nullspace, nullspace_below, orthonormal_columns, polar_unitary3,
};
use crate::sample;
use crate::spacetime::{Event, FourVector, quadratic_form, sheet_distance};
use nalgebra::{DMatrix, DVector, Matrix3, Matrix5, Vector3};
use rand::RngExt;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

/// Errors from oracle construction and preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    /// Source points do not affinely span 3-space (or there are fewer than
    /// four of them).
    #[error("source points do not affinely span 3-space")]
    DegenerateSpan,

    /// The input pairs fail the isometry congruence hypothesis.
    #[error(
        "pairs {i} and {j} break distance preservation: before {before}, after {after}"
    )]
    NotDistancePreserving { i: usize, j: usize, before: f64, after: f64 },

    /// A commutator left the span of the basis.
    #[error("bracket [{i}, {j}] leaves the span: residual {residual:e}")]
    NotClosed { i: usize, j: usize, residual: f64 },

    /// A representation generator is not invertible.
    #[error("generator {index} is not invertible (determinant {det:e})")]
    NotInvertible { index: usize, det: f64 },

    /// Generators are empty or of mismatched sizes.
    #[error("bad representation shape: {what}")]
    BadShape { what: String },

    /// Basis elements are linearly dependent.
    #[error("basis elements are linearly dependent (rank {rank} of {len})")]
    DependentBasis { rank: usize, len: usize },

    /// The simultaneity oracle needs a nonzero boost.
    #[error("boost velocity must be nonzero")]
    ZeroBeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one oracle run. A failing report always carries a witness.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub detail: String,
}

impl OracleReport {
    pub fn pass(detail: impl Into<String>) -> Self {
        Self { verdict: Verdict::Pass, witness: None, detail: detail.into() }
    }

    pub fn pass_with(detail: impl Into<String>, witness: serde_json::Value) -> Self {
        Self { verdict: Verdict::Pass, witness: Some(witness), detail: detail.into() }
    }

    pub fn fail(detail: impl Into<String>, witness: serde_json::Value) -> Self {
        Self { verdict: Verdict::Fail, witness: Some(witness), detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Result of [`fit_isometry`]: the recovered map `r -> A r + C` and the
/// worst reproduction error over the input pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryFit {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
    pub residual: f64,
}

/// Recovers the unique Euclidean isometry through at least four
/// distance-congruent point pairs in general position.
///
/// The translation comes from a base pair, the linear part from a
/// least-squares solve on centered points followed by polar projection onto
/// O(3). The congruence precondition (all pairwise distances preserved
/// within 1e-9) is what makes the projected candidate reproduce every pair.
pub fn fit_isometry(pairs: &[(Vector3<f64>, Vector3<f64>)]) -> Result<IsometryFit, VerifyError> {
    if pairs.len() < 4 {
        return Err(VerifyError::DegenerateSpan);
    }
    for i in 0..pairs.len() {
        for j in (i + 1)..pairs.len() {
            let before = (pairs[i].0 - pairs[j].0).norm();
            let after = (pairs[i].1 - pairs[j].1).norm();
            if (before - after).abs() > 1e-9 {
                return Err(VerifyError::NotDistancePreserving { i, j, before, after });
            }
        }
    }
    let (src0, dst0) = pairs[0];
    let centered = DMatrix::from_fn(3, pairs.len() - 1, |r, c| (pairs[c + 1].0 - src0)[r]);
    if numerical_rank(&centered, RANK_CUTOFF) < 3 {
        return Err(VerifyError::DegenerateSpan);
    }
    let mut s = Matrix3::zeros();
    let mut h = Matrix3::zeros();
    for (src, dst) in &pairs[1..] {
        let sc = src - src0;
        let dc = dst - dst0;
        s += sc * sc.transpose();
        h += dc * sc.transpose();
    }
    let a_ls = h * s.try_inverse().ok_or(VerifyError::DegenerateSpan)?;
    let a = polar_unitary3(&a_ls).ok_or(VerifyError::DegenerateSpan)?;
    let c = dst0 - a * src0;
    let residual = pairs
        .iter()
        .map(|(src, dst)| (a * src + c - dst).norm())
        .fold(0.0, f64::max);
    Ok(IsometryFit { rotation: a, translation: c, residual })
}

/// A finite set of invertible matrices generating a linear action.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRep {
    generators: Vec<DMatrix<f64>>,
    label: String,
}

impl LinearRep {
    pub fn new(generators: Vec<DMatrix<f64>>, label: impl Into<String>) -> Result<Self, VerifyError> {
        let Some(first) = generators.first() else {
            return Err(VerifyError::BadShape { what: "no generators".to_string() });
        };
        let n = first.nrows();
        for (index, g) in generators.iter().enumerate() {
            if g.nrows() != n || g.ncols() != n {
                return Err(VerifyError::BadShape {
                    what: format!("generator {index} is {}x{}, expected {n}x{n}", g.nrows(), g.ncols()),
                });
            }
            let det = g.determinant();
            if det.abs() <= 1e-12 {
                return Err(VerifyError::NotInvertible { index, det });
            }
        }
        Ok(Self { generators, label: label.into() })
    }

    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.generators[0].nrows()
    }
}

fn rotation_generators_4d() -> Vec<DMatrix<f64>> {
    let quarter_turns = [
        // about x: y -> z, z -> -y
        Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0),
        // about y: z -> x, x -> -z
        Matrix3::new(0.0, 0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0),
        // about z: x -> y, y -> -x
        Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0),
    ];
    quarter_turns
        .iter()
        .map(|a| {
            DMatrix::from_fn(4, 4, |r, c| match (r, c) {
                (3, 3) => 1.0,
                (3, _) | (_, 3) => 0.0,
                _ => a[(r, c)],
            })
        })
        .collect()
}

/// The linear action of the Galilei stabilizer of the origin on tangent
/// vectors `(v, eps)`: six generators, three quarter-turn rotations
/// `diag(A, 1)` and three unit boosts `[[I, e_i], [0, 1]]`.
pub fn galilean_stabilizer_rep() -> LinearRep {
    let mut generators = rotation_generators_4d();
    for i in 0..3 {
        let mut b = DMatrix::identity(4, 4);
        b[(i, 3)] = 1.0;
        generators.push(b);
    }
    LinearRep::new(generators, "galilean-stabilizer").expect("generators are invertible")
}

/// The rotations-only subrepresentation, the positive control for the
/// invariant-line search: it fixes exactly the time axis.
pub fn rotation_block_rep() -> LinearRep {
    LinearRep::new(rotation_generators_4d(), "rotation-block").expect("generators are invertible")
}

/// Common invariant lines of a representation.
#[derive(Debug, Clone)]
pub struct InvariantLines {
    /// Unit vectors spanning the isolated common eigenlines.
    pub lines: Vec<DVector<f64>>,
    /// Orthonormal bases of subspaces of dimension at least 2 on which every
    /// generator acts as a scalar; every line inside such a subspace is
    /// invariant ("degenerate: all lines" situations like the identity rep).
    pub degenerate: Vec<DMatrix<f64>>,
}

impl InvariantLines {
    pub fn is_empty(&self) -> bool {
        self.lines.is_empty() && self.degenerate.is_empty()
    }
}

/// Finds every line carried to itself by all generators.
///
/// The search refines subspaces instead of trusting any particular
/// eigenbasis: starting from the whole space, for each generator in turn it
/// intersects down to the largest invariant subspace, splits it into real
/// eigenspaces of the restricted map, and recurses. A surviving
/// one-dimensional subspace is a common eigenline; a surviving higher
/// dimensional one means every generator acts on it as a scalar, so all of
/// its lines are invariant and it is reported as degenerate. Candidates are
/// re-checked against the direct criterion `g v` parallel to `v` within
/// 1e-9 for every generator.
pub fn invariant_lines(rep: &LinearRep) -> InvariantLines {
    let n = rep.dim();
    let mut found = InvariantLines { lines: Vec::new(), degenerate: Vec::new() };
    refine(rep.generators(), 0, DMatrix::identity(n, n), &mut found);

    let mut lines: Vec<DVector<f64>> = Vec::new();
    'candidate: for mut v in found.lines.drain(..) {
        v /= v.norm();
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-12)
            && *first < 0.0
        {
            v = -v;
        }
        for g in rep.generators() {
            let gv = g * &v;
            let lambda = v.dot(&gv);
            if (&gv - lambda * &v).norm() > 1e-9 * gv.norm() {
                continue 'candidate;
            }
        }
        if lines.iter().all(|seen| (1.0 - seen.dot(&v).abs()) > 1e-9) {
            lines.push(v);
        }
    }
    InvariantLines { lines, degenerate: found.degenerate }
}

fn refine(gens: &[DMatrix<f64>], idx: usize, basis: DMatrix<f64>, out: &mut InvariantLines) {
    let k = basis.ncols();
    if k == 0 {
        return;
    }
    if idx == gens.len() {
        if k == 1 {
            out.lines.push(basis.column(0).into_owned());
        } else {
            out.degenerate.push(basis);
        }
        return;
    }
    let g = &gens[idx];
    let n = basis.nrows();

    // Largest g-invariant subspace of span(basis): repeatedly keep the
    // vectors whose image stays inside the current span. The leak matrix can
    // be numerically zero, so its threshold is absolute, scaled by g itself.
    let mut v = basis;
    loop {
        let projector = DMatrix::identity(n, n) - &v * v.transpose();
        let image = g * &v;
        let outward = &projector * &image;
        let kept = nullspace_below(&outward, RANK_CUTOFF * (1.0 + image.amax()));
        if kept.ncols() == 0 {
            return;
        }
        if kept.ncols() == v.ncols() {
            break;
        }
        v = orthonormal_columns(&(&v * kept), RANK_CUTOFF);
    }

    // Split along the real eigenvalues of the restriction of g.
    let r = v.transpose() * g * &v;
    let scale = 1.0 + r.amax();
    let mut reals: Vec<f64> = Vec::new();
    for ev in r.complex_eigenvalues().iter() {
        if ev.im.abs() > 1e-9 * scale {
            continue;
        }
        if reals.iter().all(|seen| (seen - ev.re).abs() > 1e-9 * scale) {
            reals.push(ev.re);
        }
    }
    for lambda in reals {
        let shifted = &r - DMatrix::identity(r.nrows(), r.ncols()) * lambda;
        let coords = nullspace_below(&shifted, 1e-9 * scale);
        if coords.ncols() == 0 {
            continue;
        }
        let sub = orthonormal_columns(&(&v * coords), RANK_CUTOFF);
        refine(gens, idx + 1, sub, out);
    }
}

/// A basis of a matrix Lie algebra in the 5x5 affine representation
/// (4x4 linear block, translation column, zero last row).
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraBasis {
    elements: Vec<Matrix5<f64>>,
    label: String,
}

fn vectorize(m: &Matrix5<f64>) -> DVector<f64> {
    DVector::from_iterator(25, m.iter().copied())
}

impl LieAlgebraBasis {
    pub fn new(elements: Vec<Matrix5<f64>>, label: impl Into<String>) -> Result<Self, VerifyError> {
        let len = elements.len();
        if len == 0 {
            return Err(VerifyError::BadShape { what: "empty basis".to_string() });
        }
        let stacked = DMatrix::from_columns(&elements.iter().map(vectorize).collect::<Vec<_>>());
        let rank = numerical_rank(&stacked, RANK_CUTOFF);
        if rank < len {
            return Err(VerifyError::DependentBasis { rank, len });
        }
        Ok(Self { elements, label: label.into() })
    }

    pub fn elements(&self) -> &[Matrix5<f64>] {
        &self.elements
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn basis_element(entries: &[(usize, usize, f64)]) -> Matrix5<f64> {
    let mut m = Matrix5::zeros();
    for (r, c, value) in entries {
        m[(*r, *c)] = *value;
    }
    m
}

fn rotation_and_translation_generators() -> Vec<Matrix5<f64>> {
    vec![
        // J1, J2, J3: infinitesimal rotations about x, y, z.
        basis_element(&[(2, 1, 1.0), (1, 2, -1.0)]),
        basis_element(&[(0, 2, 1.0), (2, 0, -1.0)]),
        basis_element(&[(1, 0, 1.0), (0, 1, -1.0)]),
        // P1, P2, P3: space translations.
        basis_element(&[(0, 4, 1.0)]),
        basis_element(&[(1, 4, 1.0)]),
        basis_element(&[(2, 4, 1.0)]),
        // H: time translation.
        basis_element(&[(3, 4, 1.0)]),
    ]
}

/// The ten-dimensional Poincare algebra: rotations J, symmetric boosts K
/// (the derivative of `standard_boost` at zero velocity), translations P
/// and H.
pub fn poincare_lie_basis() -> LieAlgebraBasis {
    let mut elements = rotation_and_translation_generators();
    for i in 0..3 {
        elements.insert(3 + i, basis_element(&[(i, 3, 1.0), (3, i, 1.0)]));
    }
    LieAlgebraBasis::new(elements, "poincare").expect("independent generators")
}

/// The ten-dimensional Galilei algebra: same J, P, H, but nilpotent boosts
/// K with a single space-time entry.
pub fn galilei_lie_basis() -> LieAlgebraBasis {
    let mut elements = rotation_and_translation_generators();
    for i in 0..3 {
        elements.insert(3 + i, basis_element(&[(i, 3, 1.0)]));
    }
    LieAlgebraBasis::new(elements, "galilei").expect("independent generators")
}

/// The abelian translation subalgebra {P1, P2, P3, H}.
pub fn translation_lie_basis() -> LieAlgebraBasis {
    let elements = vec![
        basis_element(&[(0, 4, 1.0)]),
        basis_element(&[(1, 4, 1.0)]),
        basis_element(&[(2, 4, 1.0)]),
        basis_element(&[(3, 4, 1.0)]),
    ];
    LieAlgebraBasis::new(elements, "translations").expect("independent generators")
}

/// Rank of the span of all pairwise commutators `[X, Y] = XY - YX`.
///
/// Every linear functional that kills the derived algebra is a candidate
/// infinitesimal clock; the codimension `basis.len() - rank` counts those
/// candidates. Errors with `NotClosed` if some bracket leaves the span of
/// the basis.
pub fn derived_algebra_rank(basis: &LieAlgebraBasis) -> Result<usize, VerifyError> {
    let elements = basis.elements();
    let span = DMatrix::from_columns(&elements.iter().map(vectorize).collect::<Vec<_>>());
    let span_svd = span.clone().svd(true, true);
    let mut brackets: Vec<DVector<f64>> = Vec::new();
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            let b = elements[i] * elements[j] - elements[j] * elements[i];
            let v = vectorize(&b);
            let coeffs = span_svd
                .solve(&v, RANK_CUTOFF)
                .expect("least squares on a nonempty span");
            let residual = (&span * coeffs - &v).norm();
            if residual > 1e-9 * (1.0 + v.norm()) {
                return Err(VerifyError::NotClosed { i, j, residual });
            }
            brackets.push(v);
        }
    }
    if brackets.is_empty() {
        return Ok(0);
    }
    let stacked = DMatrix::from_columns(&brackets);
    Ok(numerical_rank(&stacked, RANK_CUTOFF))
}

/// The Galilei clock homomorphism: the time-translation component `e`.
pub fn galilei_time_homomorphism(g: &GalileiElement) -> f64 {
    g.time_translation()
}

/// Checks `phi(g g') = phi(g) + phi(g')` bit-for-bit on random
/// forward-in-time Galilei pairs.
pub fn galilei_homomorphism_additivity(trials: u32, seed: u64) -> OracleReport {
    for index in 0..trials {
        let mut rng = sample::trial_rng(seed, u64::from(index));
        let g1 = sample::galilei(&mut rng);
        let g2 = sample::galilei(&mut rng);
        let composed = g1.compose(&g2).expect("product of valid elements");
        let lhs = galilei_time_homomorphism(&composed);
        let rhs = galilei_time_homomorphism(&g1) + galilei_time_homomorphism(&g2);
        if lhs != rhs {
            return OracleReport::fail(
                format!("additivity broke at trial {index}"),
                json!({"trial": index, "phi_composed": lhs, "phi_sum": rhs}),
            );
        }
    }
    OracleReport::pass(format!(
        "phi(g g') = phi(g) + phi(g') exactly on {trials} random pairs"
    ))
}

/// Canonical sample pairs for the translation-functional obstruction. The
/// first three pin the spacelike and null values; the opposite-timelike pair
/// closes the system so that the only solution is identically zero.
pub fn canonical_obstruction_pairs() -> Vec<(FourVector, FourVector)> {
    vec![
        (FourVector::new(1.0, 0.0, 0.0, 0.0), FourVector::new(-1.0, 0.0, 0.0, 0.0)),
        (FourVector::new(1.0, 0.0, 0.0, 0.0), FourVector::new(0.0, 1.0, 0.0, 0.0)),
        (FourVector::new(0.0, 0.0, 0.0, 1.0), FourVector::new(0.0, 0.0, 0.0, 1.0)),
        (FourVector::new(0.0, 0.0, 0.0, 1.0), FourVector::new(0.0, 0.0, 0.0, -1.0)),
    ]
}

/// The linear system satisfied by a Lorentz-invariant additive functional,
/// restricted to the sampled form values.
///
/// Lorentz invariance means a translation functional `f` can only depend on
/// the form value `Q(C)`, so the unknowns are numbers `F(s)` at the sampled
/// values `s`; additivity contributes one row
/// `F(Q(C + C')) - F(Q(C)) - F(Q(C')) = 0` per pair, and `F(0) = 0` is
/// forced by the zero translation.
#[derive(Debug, Clone)]
pub struct FunctionalSystem {
    /// Distinct sampled form values, identified within tolerance.
    pub values: Vec<f64>,
    /// One row per constraint over the unknowns `F(values[j])`.
    pub constraints: DMatrix<f64>,
    /// Dimension of the solution space.
    pub nullity: usize,
}

pub fn functional_system(pairs: &[(FourVector, FourVector)]) -> FunctionalSystem {
    let mut values: Vec<f64> = vec![0.0];
    let index_of = |values: &mut Vec<f64>, s: f64| -> usize {
        if let Some(i) = values.iter().position(|v| (v - s).abs() <= 1e-9 * (1.0 + s.abs())) {
            i
        } else {
            values.push(s);
            values.len() - 1
        }
    };
    let mut rows: Vec<Vec<(usize, f64)>> = vec![vec![(0, 1.0)]];
    for (c1, c2) in pairs {
        let a = index_of(&mut values, quadratic_form(*c1));
        let b = index_of(&mut values, quadratic_form(*c2));
        let sum = index_of(&mut values, quadratic_form(*c1 + *c2));
        rows.push(vec![(sum, 1.0), (a, -1.0), (b, -1.0)]);
    }
    let mut constraints = DMatrix::zeros(rows.len(), values.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, coeff) in row {
            constraints[(r, *c)] += coeff;
        }
    }
    let rank = numerical_rank(&constraints, RANK_CUTOFF);
    let nullity = values.len() - rank;
    FunctionalSystem { values, constraints, nullity }
}

/// Passes iff the sampled additivity constraints force `F = 0` on every
/// sampled form value; a failing report carries a nonzero solution.
pub fn translation_functional_obstruction(pairs: &[(FourVector, FourVector)]) -> OracleReport {
    let system = functional_system(pairs);
    if system.nullity == 0 {
        return OracleReport::pass(format!(
            "the only additive Lorentz-invariant functional on sampled values {:?} is zero",
            system.values
        ));
    }
    // Pad with zero rows so the nullspace helper sees a tall system.
    let (rows, cols) = system.constraints.shape();
    let mut padded = DMatrix::zeros(rows.max(cols), cols);
    padded.view_mut((0, 0), (rows, cols)).copy_from(&system.constraints);
    let basis = nullspace(&padded, RANK_CUTOFF);
    let free = basis.column(0).into_owned();
    OracleReport::fail(
        format!(
            "{} independent nonzero functionals survive the sampled constraints",
            system.nullity
        ),
        json!({
            "values": system.values,
            "solution": free.iter().copied().collect::<Vec<f64>>(),
        }),
    )
}

/// Produces an event pair that is simultaneous before the boost `beta` and
/// non-simultaneous after, with the clock gap `k (beta . u)` as witness.
pub fn simultaneity_counterexample(beta: Vector3<f64>) -> Result<OracleReport, GroupError> {
    let speed = beta.norm();
    if speed == 0.0 {
        return Err(GroupError::Degenerate { what: "zero boost velocity" });
    }
    let boost = PoincareElement::boost(beta)?;
    let u = beta / speed;
    let q = Event::origin();
    let q2 = Event::from_parts(u, 0.0);
    let gap = boost.act_event(q2).t - boost.act_event(q).t;
    let k = 1.0 / (1.0 - beta.dot(&beta)).sqrt();
    let expected = k * beta.dot(&u);
    if gap == 0.0 || (gap - expected).abs() > 1e-12 {
        return Ok(OracleReport::fail(
            "no simultaneity-breaking pair found; the boost left the sheet intact".to_string(),
            json!({"beta": [beta.x, beta.y, beta.z], "gap": gap, "expected": expected}),
        ));
    }
    Ok(OracleReport::pass_with(
        format!("simultaneous pair separates by Delta t = {gap} after the boost"),
        json!({
            "pair": [[q.x, q.y, q.z, q.t], [q2.x, q2.y, q2.z, q2.t]],
            "gap": gap,
            "expected": expected,
        }),
    ))
}

/// The Galilean control: on random simultaneous pairs, a Galilei element
/// never changes the clock difference, bit for bit.
pub fn galilei_sheet_preservation(trials: u32, seed: u64) -> OracleReport {
    for index in 0..trials {
        let mut rng = sample::trial_rng(seed, u64::from(index));
        let g = sample::galilei(&mut rng);
        let t = rng.random_range(-10.0..10.0);
        let q = Event::from_parts(sample::vector3(&mut rng, 10.0), t);
        let q2 = Event::from_parts(sample::vector3(&mut rng, 10.0), t);
        let gap = g.act_event(q2).t - g.act_event(q).t;
        if gap != 0.0 {
            return OracleReport::fail(
                format!("a Galilei element broke simultaneity at trial {index}"),
                json!({"trial": index, "gap": gap}),
            );
        }
    }
    OracleReport::pass(format!(
        "Galilei action left Delta t = 0 on {trials} random simultaneous pairs"
    ))
}

/// Checks that the sheet distance does not depend on which transverse
/// translation carries a simultaneous pair to the origin sheet.
pub fn distance_family_consistency(trials: u32, seed: u64) -> OracleReport {
    for index in 0..trials {
        let mut rng = sample::trial_rng(seed, u64::from(index));
        let t = rng.random_range(-10.0..10.0);
        let q = Event::from_parts(sample::vector3(&mut rng, 10.0), t);
        let q2 = Event::from_parts(sample::vector3(&mut rng, 10.0), t);
        let k1 = FourVector::from_parts(sample::vector3(&mut rng, 10.0), t);
        let k2 = FourVector::from_parts(sample::vector3(&mut rng, 10.0), t);
        let d1 = sheet_distance(q - k1, q2 - k1, 1e-9).expect("images stay simultaneous");
        let d2 = sheet_distance(q - k2, q2 - k2, 1e-9).expect("images stay simultaneous");
        if (d1 - d2).abs() > 1e-12 {
            return OracleReport::fail(
                format!("sheet distance depended on the transverse translation at trial {index}"),
                json!({"trial": index, "d1": d1, "d2": d2}),
            );
        }
    }
    OracleReport::pass(format!(
        "sheet distance agreed across transverse translations on {trials} trials"
    ))
}

/// Synthesizes random isometries, fits them back, and checks the recovery.
pub fn isometry_recovery_oracle(trials: u32, seed: u64) -> OracleReport {
    for index in 0..trials {
        let mut rng = sample::trial_rng(seed, u64::from(index));
        let a = sample::rotation(&mut rng);
        let c = sample::vector3(&mut rng, 10.0);
        let pairs: Vec<(Vector3<f64>, Vector3<f64>)> = (0..6)
            .map(|_| {
                let src = sample::vector3(&mut rng, 5.0);
                (src, a * src + c)
            })
            .collect();
        let fit = match fit_isometry(&pairs) {
            Ok(fit) => fit,
            Err(err) => {
                return OracleReport::fail(
                    format!("fit failed at trial {index}: {err}"),
                    json!({"trial": index}),
                );
            }
        };
        let rot_err = (fit.rotation - a).amax();
        let tr_err = (fit.translation - c).norm();
        if fit.residual > 1e-8 || rot_err > 1e-8 || tr_err > 1e-8 {
            return OracleReport::fail(
                format!("recovery too loose at trial {index}"),
                json!({
                    "trial": index,
                    "residual": fit.residual,
                    "rotation_error": rot_err,
                    "translation_error": tr_err,
                }),
            );
        }
    }
    OracleReport::pass(format!("recovered {trials} random isometries with residual <= 1e-8"))
}

/// The scaling map `r -> 2r` preserves no distances and must be refused.
pub fn isometry_rejects_scaling_oracle() -> OracleReport {
    let points = [
        Vector3::new(0.0, 0.0, 0.0),
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
    ];
    let pairs: Vec<_> = points.iter().map(|p| (*p, 2.0 * p)).collect();
    match fit_isometry(&pairs) {
        Err(VerifyError::NotDistancePreserving { .. }) => {
            OracleReport::pass("scaling by 2 was rejected as distance breaking")
        }
        Ok(fit) => OracleReport::fail(
            "scaling by 2 was accepted as an isometry",
            json!({"residual": fit.residual}),
        ),
        Err(other) => OracleReport::fail(
            format!("scaling was rejected for the wrong reason: {other}"),
            json!({"error": other.to_string()}),
        ),
    }
}

/// The engine of the no-Space theorem: the six-generator stabilizer action
/// admits no invariant line at all.
pub fn no_space_oracle() -> OracleReport {
    let found = invariant_lines(&galilean_stabilizer_rep());
    if found.is_empty() {
        OracleReport::pass("the Galilean stabilizer action admits no invariant line")
    } else {
        let witness: Vec<Vec<f64>> =
            found.lines.iter().map(|v| v.iter().copied().collect()).collect();
        OracleReport::fail(
            format!("{} invariant lines found where none may exist", witness.len()),
            json!({"lines": witness}),
        )
    }
}

/// Positive control: dropping the boosts leaves exactly the time axis.
pub fn rotation_control_oracle() -> OracleReport {
    let found = invariant_lines(&rotation_block_rep());
    let axis_only = found.degenerate.is_empty()
        && found.lines.len() == 1
        && (found.lines[0][3].abs() - 1.0).abs() <= 1e-9
        && found.lines[0].rows(0, 3).norm() <= 1e-9;
    if axis_only {
        OracleReport::pass("rotations alone fix exactly the time axis")
    } else {
        let witness: Vec<Vec<f64>> =
            found.lines.iter().map(|v| v.iter().copied().collect()).collect();
        OracleReport::fail(
            format!("expected exactly the time axis, found {} lines", witness.len()),
            json!({"lines": witness, "degenerate": found.degenerate.len()}),
        )
    }
}

/// The engine of the no-Time theorem: the Poincare derived algebra is
/// everything, so no nonzero functional survives.
pub fn no_time_oracle() -> OracleReport {
    match derived_algebra_rank(&poincare_lie_basis()) {
        Ok(10) => OracleReport::pass(
            "Poincare derived algebra has rank 10 of 10: clock functionals form a 0-dimensional space",
        ),
        Ok(rank) => OracleReport::fail(
            format!("unexpected Poincare derived rank {rank}"),
            json!({"rank": rank}),
        ),
        Err(err) => OracleReport::fail(format!("bracket computation failed: {err}"), json!({})),
    }
}

/// The Galilean contrast: rank 9 of 10 leaves exactly the one-dimensional
/// family spanned by the clock.
pub fn galilei_time_control_oracle() -> OracleReport {
    match derived_algebra_rank(&galilei_lie_basis()) {
        Ok(9) => OracleReport::pass(
            "Galilei derived algebra has rank 9 of 10: clock functionals form a 1-dimensional space",
        ),
        Ok(rank) => OracleReport::fail(
            format!("unexpected Galilei derived rank {rank}"),
            json!({"rank": rank}),
        ),
        Err(err) => OracleReport::fail(format!("bracket computation failed: {err}"), json!({})),
    }
}

/// Simultaneity breaking across the whole speed grid 0.1 to 0.9.
pub fn simultaneity_grid_oracle() -> OracleReport {
    let mut gaps = Vec::new();
    for step in 1..=9 {
        let beta = Vector3::new(f64::from(step) / 10.0, 0.0, 0.0);
        match simultaneity_counterexample(beta) {
            Ok(report) if report.passed() => {
                gaps.push(json!({"beta": beta.x, "witness": report.witness}));
            }
            Ok(report) => return report,
            Err(err) => {
                return OracleReport::fail(
                    format!("oracle errored at beta = {}: {err}", beta.x),
                    json!({"beta": beta.x}),
                );
            }
        }
    }
    OracleReport::pass_with(
        "every boost on the grid 0.1..0.9 broke simultaneity with the predicted gap",
        json!(gaps),
    )
}

/// Runs the whole oracle suite in a fixed order.
pub fn run_all(trials: u32, seed: u64) -> Vec<(&'static str, OracleReport)> {
    vec![
        ("isometry-recovery", isometry_recovery_oracle(trials, seed)),
        ("isometry-rejects-scaling", isometry_rejects_scaling_oracle()),
        ("no-space-invariant-lines", no_space_oracle()),
        ("rotations-fix-the-time-axis", rotation_control_oracle()),
        ("no-time-derived-algebra", no_time_oracle()),
        ("galilei-clock-survives", galilei_time_control_oracle()),
        ("galilei-clock-additivity", galilei_homomorphism_additivity(trials, seed)),
        (
            "translation-functional-obstruction",
            translation_functional_obstruction(&canonical_obstruction_pairs()),
        ),
        ("simultaneity-breaking-grid", simultaneity_grid_oracle()),
        ("galilei-sheet-preservation", galilei_sheet_preservation(trials, seed)),
        ("distance-family-consistency", distance_family_consistency(trials, seed)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Vector4;

    #[test]
    fn identity_pairs_fit_the_identity() {
        let pairs: Vec<_> = [
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
            Vector3::new(1.0, 1.0, 1.0),
        ]
        .iter()
        .map(|p| (*p, *p))
        .collect();
        let fit = fit_isometry(&pairs).unwrap();
        assert_relative_eq!(fit.rotation, Matrix3::identity(), epsilon = 1e-12);
        assert_relative_eq!(fit.translation, Vector3::zeros(), epsilon = 1e-12);
        assert!(fit.residual <= 1e-12);
    }

    #[test]
    fn known_rotation_and_translation_are_recovered() {
        let angle = 0.83f64;
        let (s, c) = angle.sin_cos();
        let r = Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0);
        let t = Vector3::new(1.0, 2.0, 3.0);
        let sources = [
            Vector3::new(0.3, 0.0, -1.0),
            Vector3::new(1.0, 0.5, 0.0),
            Vector3::new(-0.5, 2.0, 0.5),
            Vector3::new(0.0, -1.0, 1.5),
            Vector3::new(2.0, 1.0, -0.5),
        ];
        let pairs: Vec<_> = sources.iter().map(|p| (*p, r * p + t)).collect();
        let fit = fit_isometry(&pairs).unwrap();
        assert!((fit.rotation - r).amax() <= 1e-8);
        assert!((fit.translation - t).norm() <= 1e-8);
        assert!(fit.residual <= 1e-8);
    }

    #[test]
    fn scaling_is_not_an_isometry() {
        assert!(matches!(
            fit_isometry(&[
                (Vector3::zeros(), Vector3::zeros()),
                (Vector3::x(), 2.0 * Vector3::x()),
                (Vector3::y(), 2.0 * Vector3::y()),
                (Vector3::z(), 2.0 * Vector3::z()),
            ]),
            Err(VerifyError::NotDistancePreserving { .. })
        ));
    }

    #[test]
    fn coplanar_sources_are_degenerate() {
        let pairs: Vec<_> = [
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(1.0, 1.0, 0.0),
        ]
        .iter()
        .map(|p| (*p, *p))
        .collect();
        assert_eq!(fit_isometry(&pairs), Err(VerifyError::DegenerateSpan));
    }

    #[test]
    fn stabilizer_generators_act_as_documented() {
        let rep = galilean_stabilizer_rep();
        let gens = rep.generators();
        assert_eq!(gens.len(), 6);
        // Boost generator e1 maps (0,0,0,1) to (1,0,0,1).
        let time_axis = DVector::from_column_slice(&[0.0, 0.0, 0.0, 1.0]);
        let boosted = &gens[3] * &time_axis;
        assert_eq!(boosted, DVector::from_column_slice(&[1.0, 0.0, 0.0, 1.0]));
        // Rotation about z maps (1,0,0,0) to (0,1,0,0).
        let x_axis = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0]);
        let turned = &gens[2] * &x_axis;
        assert_eq!(turned, DVector::from_column_slice(&[0.0, 1.0, 0.0, 0.0]));
        // All generators fix the origin (they are linear maps).
        for g in gens {
            assert_eq!(g * DVector::zeros(4), DVector::zeros(4));
        }
    }

    #[test]
    fn stabilizer_has_no_invariant_line() {
        let found = invariant_lines(&galilean_stabilizer_rep());
        assert!(found.is_empty(), "found {:?}", found.lines);
    }

    #[test]
    fn rotations_alone_fix_the_time_axis() {
        let found = invariant_lines(&rotation_block_rep());
        assert_eq!(found.lines.len(), 1);
        assert!(found.degenerate.is_empty());
        let axis = &found.lines[0];
        assert_relative_eq!(axis[3].abs(), 1.0, epsilon = 1e-12);
        assert!(axis.rows(0, 3).norm() <= 1e-12);
    }

    #[test]
    fn identity_rep_reports_all_lines_as_invariant() {
        let rep = LinearRep::new(vec![DMatrix::identity(4, 4)], "identity").unwrap();
        let found = invariant_lines(&rep);
        assert!(found.lines.is_empty());
        assert_eq!(found.degenerate.len(), 1);
        assert_eq!(found.degenerate[0].ncols(), 4);
    }

    #[test]
    fn rep_rejects_singular_generators() {
        let err = LinearRep::new(vec![DMatrix::zeros(4, 4)], "broken").unwrap_err();
        assert!(matches!(err, VerifyError::NotInvertible { index: 0, .. }));
    }

    #[test]
    fn lie_bases_have_full_rank_and_documented_entries() {
        let p = poincare_lie_basis();
        let g = galilei_lie_basis();
        assert_eq!(p.len(), 10);
        assert_eq!(g.len(), 10);
        // K1 sits at index 3 in both bases.
        let pk1 = p.elements()[3];
        assert_eq!((pk1[(0, 3)], pk1[(3, 0)]), (1.0, 1.0));
        let gk1 = g.elements()[3];
        assert_eq!(gk1[(0, 3)], 1.0);
        assert_eq!(gk1[(3, 0)], 0.0);
        assert_eq!(gk1.iter().filter(|x| **x != 0.0).count(), 1);
    }

    #[test]
    fn poincare_boost_generator_is_the_boost_derivative() {
        let h = 1e-6;
        let plus = crate::groups::standard_boost(Vector3::new(h, 0.0, 0.0)).unwrap();
        let minus = crate::groups::standard_boost(Vector3::new(-h, 0.0, 0.0)).unwrap();
        let derivative = (plus.matrix() - minus.matrix()) / (2.0 * h);
        let k1 = poincare_lie_basis().elements()[3];
        let k1_linear = k1.fixed_view::<4, 4>(0, 0).into_owned();
        assert!((derivative - k1_linear).amax() < 1e-9);
    }

    #[test]
    fn derived_ranks_separate_the_two_algebras() {
        assert_eq!(derived_algebra_rank(&poincare_lie_basis()).unwrap(), 10);
        assert_eq!(derived_algebra_rank(&galilei_lie_basis()).unwrap(), 9);
        assert_eq!(derived_algebra_rank(&translation_lie_basis()).unwrap(), 0);
    }

    #[test]
    fn rotations_alone_are_not_closed_under_bracket_with_boosts() {
        // J1 and K2 bracket into K3-like directions outside span{J1, K2}.
        let p = poincare_lie_basis();
        let basis =
            LieAlgebraBasis::new(vec![p.elements()[0], p.elements()[4]], "slice").unwrap();
        assert!(matches!(
            derived_algebra_rank(&basis),
            Err(VerifyError::NotClosed { .. })
        ));
    }

    #[test]
    fn obstruction_single_spacelike_pair_forces_zero() {
        let pairs = vec![(
            FourVector::new(1.0, 0.0, 0.0, 0.0),
            FourVector::new(-1.0, 0.0, 0.0, 0.0),
        )];
        let system = functional_system(&pairs);
        assert_eq!(system.values.len(), 2);
        assert_eq!(system.nullity, 0);
        assert!(translation_functional_obstruction(&pairs).passed());
    }

    #[test]
    fn obstruction_mixed_pair_adds_the_doubling_row() {
        let pairs = vec![(
            FourVector::new(1.0, 0.0, 0.0, 0.0),
            FourVector::new(0.0, 1.0, 0.0, 0.0),
        )];
        let system = functional_system(&pairs);
        // Unknowns: F(0), F(1), F(2); the pair row says F(2) = 2 F(1).
        assert_eq!(system.values, vec![0.0, 1.0, 2.0]);
        let row = system.constraints.row(1);
        assert_eq!((row[0], row[1], row[2]), (0.0, -2.0, 1.0));
    }

    #[test]
    fn obstruction_timelike_branch_needs_the_closing_pair() {
        // The three spec'd sample pairs leave the timelike values free.
        let open = canonical_obstruction_pairs()[..3].to_vec();
        let report = translation_functional_obstruction(&open);
        assert!(!report.passed());
        assert!(report.witness.is_some());
        // The closing opposite-timelike pair pins them to zero.
        let closed = canonical_obstruction_pairs();
        assert!(translation_functional_obstruction(&closed).passed());
    }

    #[test]
    fn simultaneity_counterexample_matches_the_formula() {
        let report = simultaneity_counterexample(Vector3::new(0.6, 0.0, 0.0)).unwrap();
        assert!(report.passed());
        let gap = report.witness.as_ref().unwrap()["gap"].as_f64().unwrap();
        assert_relative_eq!(gap, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn transverse_pairs_stay_simultaneous() {
        let boost = PoincareElement::boost(Vector3::new(0.6, 0.0, 0.0)).unwrap();
        let q = Event::origin();
        let q2 = Event::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(boost.act_event(q2).t - boost.act_event(q).t, 0.0);
    }

    #[test]
    fn simultaneity_oracle_rejects_bad_speeds() {
        assert!(matches!(
            simultaneity_counterexample(Vector3::zeros()),
            Err(GroupError::Degenerate { .. })
        ));
        assert!(matches!(
            simultaneity_counterexample(Vector3::new(1.0, 0.0, 0.0)),
            Err(GroupError::SuperluminalBeta { .. })
        ));
    }

    #[test]
    fn equal_translations_give_exactly_equal_distances() {
        let q = Event::new(1.0, 2.0, 3.0, 5.0);
        let q2 = Event::new(-1.0, 0.5, 2.0, 5.0);
        let k = FourVector::new(0.3, -0.7, 0.1, 5.0);
        let d1 = sheet_distance(q - k, q2 - k, 1e-9).unwrap();
        let d2 = sheet_distance(q - k, q2 - k, 1e-9).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn full_suite_passes_with_modest_trials() {
        for (name, report) in run_all(50, 42) {
            assert!(report.passed(), "{name} failed: {}", report.detail);
        }
    }

    #[test]
    fn oracle_reports_serialize_with_lowercase_verdicts() {
        let report = OracleReport::pass("fine");
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"verdict\":\"pass\""));
        let vec4 = Vector4::new(0.0, 0.0, 0.0, 1.0);
        let report = OracleReport::fail("broken", json!(vec4.as_slice()));
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"verdict\":\"fail\""));
        assert!(text.contains("\"witness\""));
    }
}
