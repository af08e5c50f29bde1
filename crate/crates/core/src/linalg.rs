//! Small dense Hermitian eigendecomposition helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Returns `(values, vectors)` with eigenvectors as matching columns.
pub fn eigh(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigh expects a square matrix");
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let se = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Largest absolute deviation from Hermiticity, `max |M - M^H|`.
pub fn hermiticity_error(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
}

/// Symmetrized copy `(M + M^H) / 2`.
pub fn hermitized(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).map(|z| z * Complex64::new(0.5, 0.0))
}
