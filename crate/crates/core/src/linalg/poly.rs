//! Polynomials with vector or matrix coefficients, indexed by powers of the
//! variable (`u`, or `t = 1 - u` after [`VecPoly::reflect`]).

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Relative tolerance used when trimming trailing coefficients.
pub const TRIM_TOL: f64 = 1e-10;

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `Σ_j u^j F_j` with `F_j ∈ T^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct VecPoly<T> {
    dim: usize,
    coeffs: Vec<Vec<T>>,
}

impl<T: Scalar> VecPoly<T> {
    pub fn zero(dim: usize) -> Self {
        VecPoly { dim, coeffs: Vec::new() }
    }

    pub fn constant(v: Vec<T>) -> Self {
        VecPoly { dim: v.len(), coeffs: vec![v] }
    }

    pub fn new(dim: usize, coeffs: Vec<Vec<T>>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.len() != dim) {
            return Err(Error::Shape(format!("coefficient of length {} in dim {dim}", bad.len())));
        }
        Ok(VecPoly { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored coefficients, possibly including negligible trailing terms.
    pub fn coeffs(&self) -> &[Vec<T>] {
        &self.coeffs
    }

    /// Coefficient of `u^j`, zero past the stored range.
    pub fn coeff(&self, j: usize) -> Vec<T> {
        self.coeffs.get(j).cloned().unwrap_or_else(|| vec![T::zero(); self.dim])
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().flatten().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    fn coeff_norm(c: &[T]) -> f64 {
        c.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    fn coeff_negligible(c: &[T], scale: f64) -> bool {
        c.iter().all(|x| x.negligible(TRIM_TOL, scale))
    }

    /// Drops trailing coefficients below `TRIM_TOL · max|coefficient|`.
    pub fn trimmed(&self) -> Self {
        let scale = self.max_abs();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| Self::coeff_negligible(c, scale)) {
            coeffs.pop();
        }
        VecPoly { dim: self.dim, coeffs }
    }

    /// Degree after trimming; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.trimmed().coeffs.len().checked_sub(1)
    }

    /// Leading coefficient after trimming.
    pub fn leading(&self) -> Option<Vec<T>> {
        self.trimmed().coeffs.pop()
    }

    /// `max_j ‖F_j‖∞` of the stored coefficients.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| Self::coeff_norm(c)).fold(0.0, f64::max)
    }

    fn combine(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let len = self.len().max(other.len());
        let coeffs = (0..len)
            .map(|j| {
                self.coeff(j).into_iter().zip(other.coeff(j)).map(|(a, b)| f(a, b)).collect()
            })
            .collect();
        VecPoly { dim: self.dim, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &T) -> Self {
        let coeffs =
            self.coeffs.iter().map(|c| c.iter().map(|x| x.clone() * s.clone()).collect()).collect();
        VecPoly { dim: self.dim, coeffs }
    }

    /// Coefficientwise `A·F_j`.
    pub fn left_mul(&self, a: &Matrix<T>) -> Self {
        assert_eq!(a.cols(), self.dim, "matrix-polynomial shape mismatch");
        VecPoly { dim: a.rows(), coeffs: self.coeffs.iter().map(|c| a.mul_vec(c)).collect() }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| {
                let f = T::from_usize(j);
                c.iter().map(|x| x.clone() * f.clone()).collect()
            })
            .collect();
        VecPoly { dim: self.dim, coeffs }
    }

    /// Multiplication by the variable.
    pub fn shift_mul(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.len() + 1);
        coeffs.push(vec![T::zero(); self.dim]);
        coeffs.extend(self.coeffs.iter().cloned());
        VecPoly { dim: self.dim, coeffs }
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &T) -> Vec<T> {
        let mut acc = vec![T::zero(); self.dim];
        for c in self.coeffs.iter().rev() {
            for (a, ci) in acc.iter_mut().zip(c) {
                *a = a.clone() * x.clone() + ci.clone();
            }
        }
        acc
    }

    /// Re-expands in the reflected variable: returns `G` with `G(t) = F(1 - t)`.
    /// The map is an involution, so it converts both `u → t` and `t → u`.
    pub fn reflect(&self) -> Self {
        let len = self.len();
        let coeffs = (0..len)
            .map(|i| {
                let mut out = vec![T::zero(); self.dim];
                for j in i..len {
                    let mut b = T::from_i64(binomial(j, i));
                    if i % 2 == 1 {
                        b = -b;
                    }
                    for (o, c) in out.iter_mut().zip(&self.coeffs[j]) {
                        *o += b.clone() * c.clone();
                    }
                }
                out
            })
            .collect();
        VecPoly { dim: self.dim, coeffs }
    }

    /// Scalar polynomial of component `s`.
    pub fn component(&self, s: usize) -> Vec<T> {
        self.coeffs.iter().map(|c| c[s].clone()).collect()
    }

    pub fn to_f64(&self) -> VecPoly<f64> {
        VecPoly {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.iter().map(Scalar::to_f64).collect()).collect(),
        }
    }
}

/// `Σ_j u^j P_j` with matrix coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatPoly<T> {
    rows: usize,
    cols: usize,
    coeffs: Vec<Matrix<T>>,
}

impl<T: Scalar> MatPoly<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatPoly { rows, cols, coeffs: Vec::new() }
    }

    pub fn new(rows: usize, cols: usize, coeffs: Vec<Matrix<T>>) -> Result<Self> {
        if coeffs.iter().any(|c| c.rows() != rows || c.cols() != cols) {
            return Err(Error::Shape(format!("coefficient shape differs from {rows}x{cols}")));
        }
        Ok(MatPoly { rows, cols, coeffs })
    }

    /// Stacks vector polynomials as the rows of a matrix polynomial.
    pub fn from_rows(rows: &[VecPoly<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, VecPoly::dim);
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(Error::Shape("rows of different dimension".into()));
        }
        let len = rows.iter().map(VecPoly::len).max().unwrap_or(0);
        let coeffs = (0..len)
            .map(|j| Matrix::from_rows(rows.iter().map(|r| r.coeff(j)).collect()))
            .collect();
        Ok(MatPoly { rows: rows.len(), cols, coeffs })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coeffs(&self) -> &[Matrix<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Matrix<T> {
        self.coeffs.get(j).cloned().unwrap_or_else(|| Matrix::zeros(self.rows, self.cols))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn row(&self, r: usize) -> VecPoly<T> {
        VecPoly { dim: self.cols, coeffs: self.coeffs.iter().map(|c| c.row(r).to_vec()).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Matrix::max_abs).fold(0.0, f64::max)
    }

    pub fn trimmed(&self) -> Self {
        let scale = self.max_abs();
        let mut coeffs = self.coeffs.clone();
        while coeffs
            .last()
            .is_some_and(|c| c.as_slice().iter().all(|x| x.negligible(TRIM_TOL, scale)))
        {
            coeffs.pop();
        }
        MatPoly { rows: self.rows, cols: self.cols, coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.trimmed().coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Matrix<T>> {
        self.trimmed().coeffs.pop()
    }

    fn combine(&self, other: &Self, f: impl Fn(&Matrix<T>, &Matrix<T>) -> Matrix<T>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let len = self.len().max(other.len());
        let coeffs = (0..len).map(|j| f(&self.coeff(j), &other.coeff(j))).collect();
        MatPoly { rows: self.rows, cols: self.cols, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &T) -> Self {
        MatPoly {
            rows: self.rows,
            cols: self.cols,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Coefficientwise `A·P_j`.
    pub fn left_mul(&self, a: &Matrix<T>) -> Self {
        MatPoly { rows: a.rows(), cols: self.cols, coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }

    pub fn shift_mul(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![Matrix::zeros(self.rows, self.cols)];
        coeffs.extend(self.coeffs.iter().cloned());
        MatPoly { rows: self.rows, cols: self.cols, coeffs }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&T::from_usize(j)))
            .collect();
        MatPoly { rows: self.rows, cols: self.cols, coeffs }
    }

    /// Product with a vector polynomial, `(P·F)(u) = P(u)F(u)`.
    pub fn mul_vec_poly(&self, f: &VecPoly<T>) -> VecPoly<T> {
        assert_eq!(self.cols, f.dim(), "matrix-polynomial shape mismatch");
        if self.is_empty() || f.is_empty() {
            return VecPoly::zero(self.rows);
        }
        let mut coeffs = vec![vec![T::zero(); self.rows]; self.len() + f.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, c) in f.coeffs().iter().enumerate() {
                for (o, v) in coeffs[i + j].iter_mut().zip(p.mul_vec(c)) {
                    *o += v;
                }
            }
        }
        VecPoly { dim: self.rows, coeffs }
    }

    pub fn evaluate(&self, x: &T) -> Matrix<T> {
        let mut acc = Matrix::zeros(self.rows, self.cols);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    pub fn to_f64(&self) -> MatPoly<f64> {
        MatPoly {
            rows: self.rows,
            cols: self.cols,
            coeffs: self.coeffs.iter().map(Matrix::to_f64).collect(),
        }
    }
}
