//! Small numerical helpers shared by the group validators and the theorem
//! oracles: polar projection onto the orthogonal group, SVD-based numerical
//! rank and nullspaces with a relative singular-value cutoff.

use nalgebra::{DMatrix, Matrix3};

/// Relative singular-value cutoff used for every rank decision in the crate.
pub const RANK_CUTOFF: f64 = 1e-9;

/// Orthogonal factor of the polar decomposition `m = O * P`, computed as
/// `U * V^T` from the SVD. Returns `None` when the SVD fails to converge or
/// `m` is singular enough that the factor is not determined.
pub fn polar_unitary3(m: &Matrix3<f64>) -> Option<Matrix3<f64>> {
    let svd = m.svd(true, true);
    let tiny = svd.singular_values.iter().any(|s| *s <= f64::EPSILON * svd.singular_values.max());
    if tiny {
        return None;
    }
    Some(svd.u? * svd.v_t?)
}

/// Number of singular values above `cutoff` relative to the largest one.
pub fn numerical_rank(m: &DMatrix<f64>, cutoff: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let largest = sv.max();
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > cutoff * largest).count()
}

/// Orthonormal basis of the nullspace of `m`, returned as columns, with the
/// usual relative cutoff against the largest singular value.
///
/// Requires `m` to be square or tall so the thin SVD carries all right
/// singular vectors. The zero matrix yields the full identity basis.
pub fn nullspace(m: &DMatrix<f64>, cutoff: f64) -> DMatrix<f64> {
    let largest = m.clone().svd(false, false).singular_values.max();
    nullspace_below(m, cutoff * largest)
}

/// Like [`nullspace`] but with an absolute singular-value threshold.
///
/// The relative variant misjudges matrices that are numerically zero (their
/// own largest singular value is pure noise, so nothing falls under a
/// relative cutoff); callers that know the scale of the data feeding `m`
/// should use this one.
pub fn nullspace_below(m: &DMatrix<f64>, threshold: f64) -> DMatrix<f64> {
    let (rows, cols) = m.shape();
    assert!(rows >= cols, "nullspace needs a square or tall matrix");
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("SVD of a real matrix converges");
    let keep: Vec<usize> = (0..cols)
        .filter(|i| {
            let s = if *i < svd.singular_values.len() { svd.singular_values[*i] } else { 0.0 };
            s <= threshold
        })
        .collect();
    let mut basis = DMatrix::zeros(cols, keep.len());
    for (j, i) in keep.iter().enumerate() {
        basis.set_column(j, &v_t.row(*i).transpose());
    }
    basis
}

/// Orthonormalizes the columns of `m` with a thin SVD, dropping numerically
/// dependent directions.
pub fn orthonormal_columns(m: &DMatrix<f64>, cutoff: f64) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("SVD of a real matrix converges");
    let largest = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|i| largest > 0.0 && svd.singular_values[*i] > cutoff * largest)
        .collect();
    let mut basis = DMatrix::zeros(m.nrows(), keep.len());
    for (j, i) in keep.iter().enumerate() {
        basis.set_column(j, &u.column(*i));
    }
    basis
}
