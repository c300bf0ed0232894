//! The matrix `M(λ)` representing `E` on the λ-eigenspace of `D`, and the
//! normalized eigenvectors that seed the eigenfunctions.

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, Matrix};
use crate::scalar::Scalar;
use crate::structure::StructureSet;

/// Minimum separation of `μ_r(λ)` from the other eigenvalues of `M(λ)`.
pub const COLLISION_TOL: f64 = 1e-8;
/// Bound on the last-row residual of the forward substitution, relative to `‖v‖∞`.
pub const EIGVEC_RESIDUAL_TOL: f64 = 1e-8;
/// Agreement required between the computed spectrum of `M(λ)` and `{μ_r(λ)}`.
pub const CHARPOLY_TOL: f64 = 1e-7;

/// `M(λ)` together with the `λ` it was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct MLambda<T> {
    pub lambda: T,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> MLambda<T> {
    /// Entries `M_{s,s+1}` for `s = 0..ℓ`.
    pub fn superdiagonal(&self) -> Vec<T> {
        (0..self.matrix.rows().saturating_sub(1)).map(|s| self.matrix[(s, s + 1)].clone()).collect()
    }

    /// Largest entry strictly above the superdiagonal; zero for a lower Hessenberg matrix.
    pub fn above_superdiagonal(&self) -> f64 {
        let n = self.matrix.rows();
        (0..n)
            .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
            .map(|(i, j)| self.matrix[(i, j)].magnitude())
            .fold(0.0, f64::max)
    }
}

/// `M(λ) = (M0−M1)(U−C+1)⁻¹(U+V+λ)(U−C)⁻¹(V+λ) + (P1−P0)(U−C)⁻¹(V+λ) − (m−k)V`.
pub fn build_m<T: Scalar>(s: &StructureSet<T>, lambda: &T) -> Result<MLambda<T>> {
    let uc = s.u_minus_c();
    let uc_inv = uc.inverse()?;
    let uc1_inv = uc.shift(&T::one()).inverse()?;
    let v_lam = s.v.shift(lambda);
    let uv_lam = (&s.u + &s.v).shift(lambda);
    let tail = &uc_inv * &v_lam;
    let first = &(&(&(&s.m0 - &s.m1) * &uc1_inv) * &uv_lam) * &tail;
    let second = &(&s.p1 - &s.p0) * &tail;
    let matrix = &(&first + &second) - &s.v.scale(&s.m_minus_k());
    Ok(MLambda { lambda: lambda.clone(), matrix })
}

/// Closed form of the superdiagonal entry `M_{s,s+1}`:
/// `−(ℓ−s)(n−k+s)(n+s−1)(n+s+ℓ)(s+k) / ((n+2s−1)(n+2s))`, independent of `λ`.
pub fn superdiagonal_closed_form<T: Scalar>(s: &StructureSet<T>, idx: usize) -> T {
    let p = &s.params;
    let (n, k, l) = (p.n::<T>(), p.k::<T>(), p.ell::<T>());
    let sv = T::from_usize(idx);
    let one = T::one();
    let two = T::from_i64(2);
    let num = (l.clone() - sv.clone())
        * (n.clone() - k.clone() + sv.clone())
        * (n.clone() + sv.clone() - one.clone())
        * (n.clone() + sv.clone() + l)
        * (sv.clone() + k);
    let den = (n.clone() + two.clone() * sv.clone() - one) * (n + two * sv);
    -(num / den)
}

/// The eigenvector `v` of `M(λ)` for `μ_r(λ)` normalized by `v_0 = 1`, by
/// forward substitution along the non-vanishing superdiagonal.
pub fn eigvec<T: Scalar>(s: &StructureSet<T>, lambda: &T, r: usize) -> Result<Vec<T>> {
    let m = build_m(s, lambda)?;
    eigvec_of(&m, s, r)
}

/// [`eigvec`] for an already assembled `M(λ)`.
pub fn eigvec_of<T: Scalar>(m: &MLambda<T>, s: &StructureSet<T>, r: usize) -> Result<Vec<T>> {
    let p = &s.params;
    let dim = p.dim();
    let mu = p.mu_of_lambda(r, &m.lambda);
    for other in (0..dim).filter(|&o| o != r) {
        let gap = (mu.clone() - p.mu_of_lambda(other, &m.lambda)).magnitude();
        let collides = if T::EXACT { gap == 0.0 } else { gap <= COLLISION_TOL };
        if collides {
            return Err(Error::EigenvalueCollision { r, other, gap });
        }
    }
    let a = &m.matrix;
    let mut v = vec![T::one()];
    for row in 0..dim - 1 {
        let acc = (0..=row).fold(mu.clone() * v[row].clone(), |acc, j| {
            acc - a[(row, j)].clone() * v[j].clone()
        });
        let sup = a[(row, row + 1)].clone();
        if sup.is_zero() {
            return Err(Error::Singular { condition: f64::INFINITY });
        }
        v.push(acc / sup);
    }
    let last = dim - 1;
    let residual = (0..dim)
        .fold(-(mu * v[last].clone()), |acc, j| acc + a[(last, j)].clone() * v[j].clone())
        .magnitude();
    let norm = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    let bound = T::tol(EIGVEC_RESIDUAL_TOL) * norm;
    if residual > bound {
        return Err(Error::ResidualTooLarge { residual, bound });
    }
    Ok(v)
}

/// Largest distance between the sorted numerical spectrum of `M(λ)` and the
/// sorted `{μ_r(λ)}`, relative to `max(1, max|μ_r|)`.
pub fn charpoly_deviation<T: Scalar>(s: &StructureSet<T>, lambda: &T) -> Result<f64> {
    let m = build_m(s, lambda)?;
    let p = &s.params;
    let mut expected: Vec<f64> =
        (0..p.dim()).map(|r| p.mu_of_lambda(r, lambda).to_f64()).collect();
    expected.sort_by(f64::total_cmp);
    let scale = expected.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let got = eigenvalues(&m.matrix);
    Ok(got
        .iter()
        .zip(&expected)
        .map(|(z, e)| (z - e).norm() / scale)
        .fold(0.0, f64::max))
}

/// Whether the spectrum of `M(λ)` equals `{μ_r(λ)}` to [`CHARPOLY_TOL`].
pub fn charpoly_check<T: Scalar>(s: &StructureSet<T>, lambda: &T) -> bool {
    charpoly_deviation(s, lambda).is_ok_and(|d| d <= CHARPOLY_TOL)
}
