//! Constant matrices of the two differential operators and the conjugating
//! function `Ψ(u) = X·diag(u^s)`.

use crate::linalg::{MatPoly, Matrix};
use crate::params::Params;
use crate::scalar::Scalar;

/// Every constant `(ℓ+1)×(ℓ+1)` matrix attached to a parameter set.
///
/// Field names follow the operator they belong to: `a0, b0, b1` for the
/// t-form of `D`, `m_diag, c0, c1, d0, d1` for the t-form of `E`,
/// `c, u, v` for the hypergeometric form of `D` and `m0, m1, p0, p1` for
/// that of `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureSet<T> {
    pub params: Params,
    pub a0: Matrix<T>,
    pub b0: Matrix<T>,
    pub b1: Matrix<T>,
    pub m_diag: Matrix<T>,
    pub c0: Matrix<T>,
    pub c1: Matrix<T>,
    pub d0: Matrix<T>,
    pub d1: Matrix<T>,
    pub c: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
    pub m0: Matrix<T>,
    pub m1: Matrix<T>,
    pub p0: Matrix<T>,
    pub p1: Matrix<T>,
    pub x: Matrix<T>,
}

/// `binom(i, j)` for small non-negative arguments.
pub(crate) fn binomial(i: usize, j: usize) -> i64 {
    if j > i {
        return 0;
    }
    let j = j.min(i - j);
    (0..j).fold(1i64, |acc, q| acc * (i - q) as i64 / (q + 1) as i64)
}

/// Pascal matrix `X_ij = binom(i, j)`.
pub fn pascal<T: Scalar>(ell: usize) -> Matrix<T> {
    Matrix::from_fn(ell + 1, ell + 1, |i, j| T::from_i64(binomial(i, j)))
}

/// Alternating Pascal matrix `(−1)^{i−j} binom(i, j)`, the inverse of [`pascal`].
pub fn pascal_inverse<T: Scalar>(ell: usize) -> Matrix<T> {
    Matrix::from_fn(ell + 1, ell + 1, |i, j| {
        let b = T::from_i64(binomial(i, j));
        if (i + j) % 2 == 1 {
            -b
        } else {
            b
        }
    })
}

/// `Ψ(u) = X·diag(1, u, …, u^ℓ)`. Singular at `u = 0` when `ℓ ≥ 1`.
pub fn psi_at<T: Scalar>(ell: usize, u: &T) -> Matrix<T> {
    let mut powers = Vec::with_capacity(ell + 1);
    let mut p = T::one();
    for _ in 0..=ell {
        powers.push(p.clone());
        p *= u.clone();
    }
    let x = pascal::<T>(ell);
    Matrix::from_fn(ell + 1, ell + 1, |i, j| x[(i, j)].clone() * powers[j].clone())
}

/// `Ψ` as a matrix polynomial in `u`: coefficient of `u^j` is column `j` of `X`.
pub fn psi_poly<T: Scalar>(ell: usize) -> MatPoly<T> {
    let x = pascal::<T>(ell);
    let coeffs = (0..=ell)
        .map(|j| Matrix::from_fn(ell + 1, ell + 1, |a, b| if b == j { x[(a, b)].clone() } else { T::zero() }))
        .collect();
    MatPoly::new(ell + 1, ell + 1, coeffs).expect("square coefficients")
}

impl<T: Scalar> StructureSet<T> {
    /// Fills every matrix from its closed form, `m → α`, `n → β+1` in Jacobi mode.
    pub fn build(params: &Params) -> Self {
        let dim = params.dim();
        let (n, m, k, l) = (params.n::<T>(), params.m::<T>(), params.k::<T>(), params.ell::<T>());
        let one = T::one();
        let two = T::from_i64(2);
        let s_ = |s: usize| T::from_usize(s);
        let z = || Matrix::<T>::zeros(dim, dim);

        let (mut a0, mut b0, mut b1, mut m_diag) = (z(), z(), z(), z());
        let (mut c0, mut c1, mut d0, mut d1) = (z(), z(), z(), z());
        let (mut c, mut u, mut v) = (z(), z(), z());
        let (mut m0, mut m1, mut p0, mut p1) = (z(), z(), z(), z());

        for s in 0..dim {
            let sv = s_(s);
            let last = s + 1 == dim;
            // m + ℓ − s
            let top = m.clone() + l.clone() - sv.clone();
            // (ℓ − s)(n − k + s): the coupling to s + 1
            let up = (l.clone() - sv.clone()) * (n.clone() - k.clone() + sv.clone());
            // s(ℓ − s + k): the coupling to s − 1
            let down = sv.clone() * (l.clone() - sv.clone() + k.clone());

            a0[(s, s)] = top.clone() + one.clone();
            b0[(s, s)] = -up.clone();
            b1[(s, s)] = -down.clone();
            m_diag[(s, s)] = top.clone();
            c0[(s, s)] = top.clone() * (top.clone() + one.clone());
            c1[(s, s)] = top.clone() * (top.clone() + n.clone() + one.clone());

            let d_up = up.clone() * (m.clone() + sv.clone() - k.clone() + one.clone());
            let d_down = down.clone() * (top.clone() + one.clone());
            d0[(s, s)] = d_down.clone() - d_up.clone();
            d1[(s, s)] = -(down.clone()
                * (two.clone() * m.clone() + l.clone() + n.clone() - k.clone()));

            c[(s, s)] = top.clone() + one.clone();
            u[(s, s)] = n.clone() + m.clone() + l.clone() + sv.clone() + one.clone();
            v[(s, s)] = sv.clone() * (n.clone() + m.clone() + sv.clone() - k.clone());
            m0[(s, s)] = top.clone();
            m1[(s, s)] = top.clone();
            p0[(s, s)] = (m.clone() + l.clone()) * (m.clone() + l.clone() + one.clone())
                + l.clone() * (n.clone() - k.clone())
                - two.clone() * sv.clone() * (n.clone() + m.clone() - k.clone() + sv.clone());
            p1[(s, s)] = top.clone() * (m.clone() + n.clone() + l.clone() + sv.clone() + one.clone());

            if !last {
                b0[(s, s + 1)] = up.clone();
                c0[(s, s + 1)] = up.clone();
                d0[(s, s + 1)] = d_up;
                v[(s, s + 1)] = -up.clone();
                p0[(s, s + 1)] = up.clone();
                p1[(s, s + 1)] = up.clone();
            }
            if s > 0 {
                b1[(s, s - 1)] = down.clone();
                c1[(s, s - 1)] = down.clone();
                d0[(s, s - 1)] = -d_down;
                d1[(s, s - 1)] =
                    down.clone() * (two.clone() * m.clone() + l.clone() + n.clone() - k.clone());
                c[(s, s - 1)] = -sv.clone();
                m0[(s, s - 1)] = -sv.clone();
                p0[(s, s - 1)] = -(sv.clone()
                    * (n.clone() - k.clone() + l.clone() + two.clone() * m.clone() + sv.clone()));
            }
        }

        StructureSet {
            params: *params,
            a0,
            b0,
            b1,
            m_diag,
            c0,
            c1,
            d0,
            d1,
            c,
            u,
            v,
            m0,
            m1,
            p0,
            p1,
            x: pascal(params.ell),
        }
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// `U − C`, the lower coefficient of the hypergeometric form of `D`.
    pub fn u_minus_c(&self) -> Matrix<T> {
        &self.u - &self.c
    }

    /// `n` in the scalar type.
    pub fn n(&self) -> T {
        self.params.n()
    }

    /// `m − k`, the multiplier of `V` in `E`.
    pub fn m_minus_k(&self) -> T {
        self.params.m::<T>() - self.params.k::<T>()
    }

    pub fn psi_at(&self, u: &T) -> Matrix<T> {
        psi_at(self.params.ell, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p0() -> Params {
        Params::integer(2, 1, 1, 0)
    }

    fn rows(r: Vec<Vec<i64>>) -> Matrix<f64> {
        Matrix::from_rows(r.into_iter().map(|x| x.into_iter().map(|v| v as f64).collect()).collect())
    }

    #[test]
    fn base_point_matrices() {
        let s = StructureSet::<f64>::build(&p0());
        assert_eq!(s.a0, Matrix::diag(&[2.0, 1.0]));
        assert_eq!(s.c, rows(vec![vec![2, 0], vec![-1, 1]]));
        assert_eq!(s.u, Matrix::diag(&[4.0, 5.0]));
        assert_eq!(s.v, rows(vec![vec![0, -1], vec![0, 2]]));
        assert_eq!(s.b0, rows(vec![vec![-1, 1], vec![0, 0]]));
        assert_eq!(s.b1, rows(vec![vec![0, 0], vec![1, -1]]));
        assert_eq!(s.u_minus_c(), rows(vec![vec![2, 0], vec![1, 4]]));
    }

    #[test]
    fn pascal_examples() {
        assert_eq!(pascal::<f64>(0), Matrix::identity(1));
        assert_eq!(pascal::<f64>(1), rows(vec![vec![1, 0], vec![1, 1]]));
        assert_eq!(pascal::<f64>(2), rows(vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 2, 1]]));
    }

    #[test]
    fn pascal_inverse_is_exact() {
        for ell in 0..6 {
            let x = pascal::<Rational>(ell);
            assert_eq!(&x * &pascal_inverse(ell), Matrix::identity(ell + 1));
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_at(1, &1.0), rows(vec![vec![1, 0], vec![1, 1]]));
        assert_eq!(psi_at(1, &0.0), rows(vec![vec![1, 0], vec![1, 0]]));
        let expected = &pascal::<f64>(2) * &Matrix::diag(&[1.0, 0.5, 0.25]);
        assert_eq!(psi_at(2, &0.5), expected);
        assert_eq!(psi_poly::<f64>(2).evaluate(&0.5), expected);
    }

    #[test]
    fn u_minus_c_band() {
        let params = Params::integer(3, 2, 3, 1);
        let s = StructureSet::<Rational>::build(&params);
        let d = s.u_minus_c();
        for i in 0..4 {
            assert_eq!(d[(i, i)], Rational::from_i64(3 + 2 * i as i64));
            if i > 0 {
                assert_eq!(d[(i, i - 1)], Rational::from_i64(i as i64));
            }
            for j in i + 1..4 {
                assert_eq!(d[(i, j)], Rational::from_i64(0));
            }
        }
    }

    #[test]
    fn b_rows_sum_to_zero() {
        let s = StructureSet::<Rational>::build(&Params::integer(4, 3, 3, 2));
        let ones = vec![Rational::from_i64(1); 4];
        assert!(s.b0.mul_vec(&ones).iter().all(num_traits::Zero::is_zero));
        assert!(s.b1.mul_vec(&ones).iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn jacobi_twin_is_identical() {
        let params = Params::integer(3, 1, 2, 1);
        let a = StructureSet::<f64>::build(&params);
        let b = StructureSet::<f64>::build(&params.as_jacobi());
        assert_eq!((a.c0, a.d0, a.d1, a.p0, a.p1, a.v), (b.c0, b.d0, b.d1, b.p0, b.p1, b.v));
    }
}
