//! Eigenfunctions `F_{w,r}`, the packaged polynomials `P_w`, the functions
//! `H = ΨF` and the spherical profiles.

use crate::error::{Error, Result};
use crate::hypergeom::terminating_solution;
use crate::linalg::{MatPoly, VecPoly, TRIM_TOL};
use crate::params::Params;
use crate::residual::Residual;
use crate::scalar::Scalar;
use crate::spectral::eigvec;
use crate::structure::{psi_poly, StructureSet};

/// Joint eigenfunction of `D` and `E` with label `(w, r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFunction<T> {
    pub w: usize,
    pub r: usize,
    pub lambda: T,
    pub mu: T,
    /// Coefficients in `u`, of degree `w`.
    pub poly: VecPoly<T>,
}

impl<T: Scalar> EigenFunction<T> {
    /// Builds `F = ₂H₁(U; V+λ; U−C; u)·F(0)` with `F(0)` the normalized
    /// eigenvector of `M(λ)` for `μ_r(λ)`.
    pub fn build(s: &StructureSet<T>, w: usize, r: usize) -> Result<Self> {
        let p = &s.params;
        if !p.in_set(w, r) {
            return Err(Error::OutsideSet { w, r });
        }
        let lambda: T = p.lambda(w, r);
        let mu: T = p.mu(w, r);
        let v0 = eigvec(s, &lambda, r)?;
        let poly = terminating_solution(&s.u_minus_c(), &s.u, &s.v.shift(&lambda), &v0, w)?;
        Ok(EigenFunction { w, r, lambda, mu, poly })
    }

    pub fn value_at_zero(&self) -> Vec<T> {
        self.poly.coeff(0)
    }

    /// Leading coefficient `x` (coefficient of `u^w`).
    pub fn leading(&self) -> Vec<T> {
        self.poly.coeff(self.w)
    }

    /// Whether the leading coefficient has the shape `(x_0, …, x_r, 0, …, 0)`
    /// with `|x_r| > tol · scale`, `scale` the largest coefficient magnitude.
    pub fn leading_shape_ok(&self, tol: f64) -> bool {
        let x = self.leading();
        let scale = self.poly.max_abs();
        let head = !x[self.r].negligible(tol, scale);
        let tail = x[self.r + 1..].iter().all(|v| v.negligible(tol, scale));
        head && tail && self.poly.degree() == Some(self.w)
    }

    /// `H = ΨF` in the variable `u`.
    pub fn h(&self, ell: usize) -> VecPoly<T> {
        psi_poly::<T>(ell).mul_vec_poly(&self.poly)
    }
}

/// `F_{w,r}` for the given parameters.
pub fn f_wr<T: Scalar>(params: &Params, w: usize, r: usize) -> Result<EigenFunction<T>> {
    params.validate()?;
    EigenFunction::build(&StructureSet::build(params), w, r)
}

/// `P_w`, whose row `r` is `F_{w,r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPackage<T> {
    pub w: usize,
    pub p: MatPoly<T>,
}

/// Stacks `F_{w,0}, …, F_{w,ℓ}` and checks that the leading coefficient is
/// lower triangular and nonsingular.
pub fn assemble_p_with<T: Scalar>(s: &StructureSet<T>, w: usize) -> Result<PolynomialPackage<T>> {
    let rows = (0..s.dim())
        .map(|r| EigenFunction::build(s, w, r).map(|f| f.poly))
        .collect::<Result<Vec<_>>>()?;
    let p = MatPoly::from_rows(&rows)?;
    let lead = p.coeff(w);
    let scale = p.max_abs();
    for i in 0..s.dim() {
        if lead[(i, i)].negligible(TRIM_TOL, scale) {
            return Err(Error::Shape(format!("leading coefficient of P_{w} is singular at {i}")));
        }
        if (i + 1..s.dim()).any(|j| !lead[(i, j)].negligible(TRIM_TOL, scale)) {
            return Err(Error::Shape(format!("leading coefficient of P_{w} is not lower triangular")));
        }
    }
    Ok(PolynomialPackage { w, p })
}

pub fn assemble_p<T: Scalar>(params: &Params, w: usize) -> Result<PolynomialPackage<T>> {
    params.validate()?;
    assemble_p_with(&StructureSet::build(params), w)
}

/// `H = ΨF` coefficientwise in `u`.
pub fn h_from_f<T: Scalar>(params: &Params, f: &VecPoly<T>) -> VecPoly<T> {
    psi_poly::<T>(params.ell).mul_vec_poly(f)
}

/// `φ_s(θ) = t^{(m+ℓ−s)/2} h_s(t)` with `t = cos²θ`, one row per angle.
pub fn spherical_profile(params: &Params, f: &VecPoly<f64>, thetas: &[f64]) -> Vec<Vec<f64>> {
    let h = h_from_f(params, f);
    let (m, ell) = (params.m_f64(), params.ell as f64);
    thetas
        .iter()
        .map(|theta| {
            let t = theta.cos().powi(2);
            let u = theta.sin().powi(2);
            let hv = h.evaluate(&u);
            hv.iter()
                .enumerate()
                .map(|(s, hs)| t.powf((m + ell - s as f64) / 2.0) * hs)
                .collect()
        })
        .collect()
}

/// Residual of the three-term recursion satisfied by the t-power coefficients
/// `H_j` of `H = ΨF`, where `F` is a `D`-eigenfunction with eigenvalue `lambda`:
///
/// `[(j−1)(j−2) + (j−1)(A0+n) + B1 + λ]H_{j−1} − [2j(j−1) + j(2A0+n) − B0 + λ]H_j
///  + (j+1)(j+A0)H_{j+1} = 0`.
pub fn t_recursion_residual<T: Scalar>(
    s: &StructureSet<T>,
    f: &VecPoly<T>,
    lambda: &T,
) -> Residual {
    let h = psi_poly::<T>(s.params.ell).mul_vec_poly(f).reflect();
    let dim = s.dim();
    let n = s.n();
    let zero = vec![T::zero(); dim];
    let mut out = Residual::zero();
    for j in 0..=h.len() {
        let jt = T::from_usize(j);
        let prev = if j == 0 { zero.clone() } else { h.coeff(j - 1) };
        let jm1 = jt.clone() - T::one();
        let jm2 = jt.clone() - T::from_i64(2);
        let a = (&s.a0.shift(&n).scale(&jm1) + &s.b1)
            .shift(&(jm1.clone() * jm2 + lambda.clone()));
        let b = (&s.a0.scale(&T::from_i64(2)).shift(&n).scale(&jt) - &s.b0)
            .shift(&(T::from_i64(2) * jt.clone() * jm1 + lambda.clone()));
        let c = s.a0.shift(&jt).scale(&(jt.clone() + T::one()));
        let terms = [a.mul_vec(&prev), b.mul_vec(&h.coeff(j)), c.mul_vec(&h.coeff(j + 1))];
        for i in 0..dim {
            let total = terms[0][i].clone() - terms[1][i].clone() + terms[2][i].clone();
            out.abs = out.abs.max(total.magnitude());
            for t in &terms {
                out.scale = out.scale.max(t[i].magnitude());
            }
        }
    }
    out
}

/// Order of vanishing at `t = 0` of each component `h_s` of `H = ΨF`
/// (`None` for an identically zero component). Only defined for `m < 0`.
pub fn vanishing_orders<T: Scalar>(params: &Params, f: &VecPoly<T>) -> Result<Vec<Option<usize>>> {
    if params.m::<f64>() >= 0.0 {
        return Err(Error::NotApplicable("vanishing orders need m < 0".into()));
    }
    let h = h_from_f(params, f).reflect();
    let scale = h.max_abs();
    Ok((0..params.dim())
        .map(|s| h.component(s).iter().position(|c| !c.negligible(TRIM_TOL, scale)))
        .collect())
}

/// Lower bound `s − m − ℓ` on the vanishing order of `h_s`, for the
/// components `s ≥ m + ℓ + 1` where it applies.
pub fn vanishing_bounds(params: &Params) -> Vec<(usize, usize)> {
    let Some(m) = params.m_int() else { return Vec::new() };
    let ell = params.ell as i64;
    (0..=params.ell)
        .filter(|&s| s as i64 > m + ell)
        .map(|s| (s, (s as i64 - m - ell) as usize))
        .collect()
}
