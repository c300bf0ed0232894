//! Spectra of small dense matrices, computed in double precision.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

fn to_nalgebra<T: Scalar>(a: &Matrix<T>) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.to_f64().as_slice())
}

/// Eigenvalues of a general real square matrix, sorted by real then imaginary part.
pub fn eigenvalues<T: Scalar>(a: &Matrix<T>) -> Vec<Complex64> {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    if a.rows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<Complex64> = to_nalgebra(a).complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    ev
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues<T: Scalar>(a: &Matrix<T>) -> Vec<f64> {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    let mut ev: Vec<f64> = to_nalgebra(a).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum() {
        let ev = eigenvalues(&Matrix::diag(&[4.0, 2.0]));
        assert_eq!(ev.len(), 2);
        assert!((ev[0] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((ev[1] - Complex64::new(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rotation_has_complex_pair() {
        let ev = eigenvalues(&Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]));
        assert!((ev[0].im + 1.0).abs() < 1e-14 && (ev[1].im - 1.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_spectrum() {
        let ev = symmetric_eigenvalues(&Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]));
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }
}
