use nalgebra::DMatrix;

use super::{Float, Mat, FLOAT_RANK_TOL};

fn to_dmatrix(m: &Mat<Float>) -> DMatrix<Float> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

/// Singular values above `FLOAT_RANK_TOL` times the larger of the top
/// singular value and `reference`.
fn kept(values: &[f64], reference: f64) -> Vec<usize> {
    let top = values.iter().copied().fold(reference, f64::max);
    if top == 0.0 {
        return Vec::new();
    }
    (0..values.len())
        .filter(|&i| values[i] > FLOAT_RANK_TOL * top)
        .collect()
}

pub(crate) fn svd_rank(m: &Mat<Float>) -> usize {
    svd_rank_within(m, 0.0)
}

pub(crate) fn svd_rank_within(m: &Mat<Float>, reference: f64) -> usize {
    let sv = to_dmatrix(m).singular_values();
    kept(sv.as_slice(), reference).len()
}

/// Orthonormal basis of the column space, from the left singular vectors
/// whose singular values clear the tolerance.
pub(crate) fn svd_column_basis(m: &Mat<Float>, reference: f64) -> Mat<Float> {
    if m.is_empty() {
        return Mat::zeros(m.rows(), 0);
    }
    let svd = to_dmatrix(m).svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let keep = kept(svd.singular_values.as_slice(), reference);
    Mat::from_fn(m.rows(), keep.len(), |i, j| u[(i, keep[j])])
}
