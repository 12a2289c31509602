//! Small dense matrix helpers. Matrices here are at most ~10x10.

use nalgebra::DMatrix;

/// Determinant by LU factorisation with partial pivoting.
pub fn determinant(m: &DMatrix<f64>) -> f64 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    if m.nrows() == 0 {
        return 1.0;
    }
    m.clone().lu().determinant()
}

/// Product of the Euclidean row norms. By Hadamard's inequality this bounds
/// `|det(m)|`, so it serves as the scale for zero tests on determinants.
pub fn hadamard_scale(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.norm()).product()
}

/// `det(m) / hadamard_scale(m)`, a dimensionless number in [-1, 1].
/// A matrix with a zero row has relative determinant 0.
pub fn relative_determinant(det: f64, m: &DMatrix<f64>) -> f64 {
    let scale = hadamard_scale(m);
    if scale == 0.0 {
        0.0
    } else {
        det / scale
    }
}

/// Signed cofactor `(-1)^(i+j) * M_ij` with 0-based indices.
pub fn cofactor(m: &DMatrix<f64>, i: usize, j: usize) -> f64 {
    let minor = m.clone().remove_row(i).remove_column(j);
    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
    sign * determinant(&minor)
}
