//! The weight `W(u) = Ψ(u)ᵗV(u)Ψ(u)`, inner products and Gram matrices.

use rayon::prelude::*;

use crate::error::Result;
use crate::family::{assemble_p_with, EigenFunction};
use crate::linalg::{symmetric_eigenvalues, Matrix, VecPoly};
use crate::params::Params;
use crate::quadrature::{gauss_jacobi, gauss_legendre, nodes_for_degree, QuadRule};
use crate::structure::{binomial, psi_at, psi_poly, StructureSet};

/// `binom(x, j) = Π_{i=1..j} (x − j + i)/i`, so `binom(x, 0) = 1` for every `x`.
pub fn general_binomial(x: f64, j: usize) -> f64 {
    (1..=j).map(|i| (x - j as f64 + i as f64) / i as f64).product()
}

/// Diagonal weight `V(u) = Σ_r c_r (1−u)^{m+ℓ−r} u^{n−1} E_rr`, with
/// `c_r = 2n·binom(ℓ+k−r−1, ℓ−r)·binom(n−k+r−1, r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    pub params: Params,
    /// `c_r`, prefactor `2n` included.
    pub coeffs: Vec<f64>,
    /// `m` (or `alpha`).
    pub m: f64,
    /// `n − 1` (or `beta`).
    pub u_power: f64,
}

impl WeightSpec {
    pub fn new(params: &Params) -> Result<Self> {
        params.validate_for_weight()?;
        let (n, m, k, ell) = (params.n_f64(), params.m_f64(), params.k as f64, params.ell);
        let coeffs = (0..=ell)
            .map(|r| {
                2.0 * n
                    * general_binomial(ell as f64 + k - r as f64 - 1.0, ell - r)
                    * general_binomial(n - k + r as f64 - 1.0, r)
            })
            .collect();
        Ok(WeightSpec { params: *params, coeffs, m, u_power: n - 1.0 })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent of `(1 − u)` in entry `r`.
    fn one_minus_power(&self, r: usize) -> f64 {
        self.m + (self.dim() - 1 - r) as f64
    }

    pub fn v_at(&self, u: f64) -> Matrix<f64> {
        let diag: Vec<f64> = (0..self.dim())
            .map(|r| self.coeffs[r] * (1.0 - u).powf(self.one_minus_power(r)) * u.powf(self.u_power))
            .collect();
        Matrix::diag(&diag)
    }

    /// `W_ij(u) = Σ_r c_r binom(r,i) binom(r,j) u^{i+j+n−1} (1−u)^{m+ℓ−r}`.
    pub fn w_at(&self, u: f64) -> Matrix<f64> {
        let dim = self.dim();
        Matrix::from_fn(dim, dim, |i, j| {
            (i.max(j)..dim)
                .map(|r| {
                    self.coeffs[r]
                        * (binomial(r, i) * binomial(r, j)) as f64
                        * u.powf((i + j) as f64 + self.u_power)
                        * (1.0 - u).powf(self.one_minus_power(r))
                })
                .sum()
        })
    }

    /// `Ψ(u)ᵗV(u)Ψ(u)`, the defining product of [`WeightSpec::w_at`].
    pub fn w_via_psi(&self, u: f64) -> Matrix<f64> {
        let psi = psi_at(self.dim() - 1, &u);
        &(&psi.transpose() * &self.v_at(u)) * &psi
    }

    /// Smallest eigenvalue of `W(u)`.
    pub fn min_eigenvalue(&self, u: f64) -> f64 {
        symmetric_eigenvalues(&self.w_at(u))[0]
    }

    /// Rule for `∫₀¹ q(u)(1−u)^{m+ℓ−r}u^{n−1} du` with `q` of degree `degree`,
    /// `refine` times the minimal node count. Integral exponents fold into the
    /// polynomial and use Gauss–Legendre; otherwise Gauss–Jacobi carries them.
    fn rule(&self, r: usize, degree: usize, refine: usize) -> (QuadRule, WeightKind) {
        let (a, b) = (self.one_minus_power(r), self.u_power);
        if a.fract() == 0.0 && b.fract() == 0.0 {
            let total = degree + a as usize + b as usize;
            (gauss_legendre(nodes_for_degree(total) * refine), WeightKind::Folded(a as i32, b as i32))
        } else {
            let rest = self.dim() - 1 - r;
            (gauss_jacobi(nodes_for_degree(degree + rest) * refine, self.m, b), WeightKind::Carried(rest as i32))
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum WeightKind {
    /// Both powers evaluated at the nodes.
    Folded(i32, i32),
    /// Rule weight is `u^{n−1}(1−u)^m`; the remaining `(1−u)^{ℓ−r}` is evaluated.
    Carried(i32),
}

/// Inner products computed through `H = ΨF`.
pub struct InnerProduct {
    pub spec: WeightSpec,
    /// Multiplier on the minimal Gauss node count.
    pub refine: usize,
}

impl InnerProduct {
    pub fn new(spec: WeightSpec) -> Self {
        InnerProduct { spec, refine: 1 }
    }

    pub fn refined(spec: WeightSpec, refine: usize) -> Self {
        InnerProduct { spec, refine: refine.max(1) }
    }

    /// `⟨F1, F2⟩_W = ∫₀¹ F2ᵗ W F1 du`.
    pub fn inner_vec(&self, f1: &VecPoly<f64>, f2: &VecPoly<f64>) -> f64 {
        let psi = psi_poly::<f64>(self.spec.dim() - 1);
        self.inner_h(&psi.mul_vec_poly(f1), &psi.mul_vec_poly(f2))
    }

    /// `Σ_r c_r ∫ h1_r h2_r (1−u)^{m+ℓ−r} u^{n−1} du` for `h = ΨF`.
    pub fn inner_h(&self, h1: &VecPoly<f64>, h2: &VecPoly<f64>) -> f64 {
        (0..self.spec.dim())
            .map(|r| {
                let (p1, p2) = (h1.component(r), h2.component(r));
                if p1.is_empty() || p2.is_empty() {
                    return 0.0;
                }
                let degree = p1.len() + p2.len() - 2;
                let (rule, kind) = self.spec.rule(r, degree, self.refine);
                let horner = |p: &[f64], u: f64| p.iter().rev().fold(0.0, |acc, c| acc * u + c);
                self.spec.coeffs[r]
                    * rule.integrate(|u| {
                        let weight = match kind {
                            WeightKind::Folded(a, b) => (1.0 - u).powi(a) * u.powi(b),
                            WeightKind::Carried(rest) => (1.0 - u).powi(rest),
                        };
                        horner(&p1, u) * horner(&p2, u) * weight
                    })
            })
            .sum()
    }
}

/// Gram data over all labels `(w, r) ∈ S` with `w ≤ wmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    pub labels: Vec<(usize, usize)>,
    /// `⟨F_a, F_b⟩_W` indexed by label position.
    pub entries: Vec<Vec<f64>>,
}

impl Gram {
    fn position(&self, w: usize, r: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (w, r))
    }

    /// `max_{a≠b} |G_ab| / √(G_aa G_bb)`.
    pub fn max_off_diagonal_ratio(&self) -> f64 {
        let n = self.labels.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let g = (self.entries[a][a] * self.entries[b][b]).sqrt();
                    worst = worst.max(self.entries[a][b].abs() / g);
                }
            }
        }
        worst
    }

    pub fn min_diagonal(&self) -> f64 {
        (0..self.labels.len()).map(|a| self.entries[a][a]).fold(f64::INFINITY, f64::min)
    }

    /// `∫ P_w W P_{w'}ᵗ du`, whose `(r, r')` entry is `⟨F_{w',r'}, F_{w,r}⟩_W`.
    pub fn matrix_inner(&self, w: usize, w2: usize) -> Option<Matrix<f64>> {
        let dim = self.labels.iter().map(|l| l.1).max()? + 1;
        let mut out = Matrix::zeros(dim, dim);
        for r in 0..dim {
            for r2 in 0..dim {
                out[(r, r2)] = self.entries[self.position(w, r)?][self.position(w2, r2)?];
            }
        }
        Some(out)
    }

    /// Largest `|(∫P_w W P_{w'}ᵗ)_{rr'}| / √(G_{(w,r)} G_{(w',r')})` over `w ≠ w'`
    /// for which both packages are complete.
    pub fn max_matrix_ratio(&self) -> f64 {
        let ws: Vec<usize> = {
            let mut v: Vec<usize> = self.labels.iter().map(|l| l.0).collect();
            v.dedup();
            v
        };
        let mut worst: f64 = 0.0;
        for &w in &ws {
            for &w2 in &ws {
                if w == w2 {
                    continue;
                }
                let (Some(m), Some(d1), Some(d2)) =
                    (self.matrix_inner(w, w2), self.matrix_inner(w, w), self.matrix_inner(w2, w2))
                else {
                    continue;
                };
                for r in 0..m.rows() {
                    for r2 in 0..m.cols() {
                        let g = (d1[(r, r)] * d2[(r2, r2)]).sqrt();
                        worst = worst.max(m[(r, r2)].abs() / g);
                    }
                }
            }
        }
        worst
    }
}

/// Gram matrix of the eigenfunctions `F_{w,r}`, `w ≤ wmax`.
pub fn gram(params: &Params, wmax: usize) -> Result<Gram> {
    gram_refined(params, wmax, 1)
}

/// [`gram`] with `refine` times the minimal node count.
pub fn gram_refined(params: &Params, wmax: usize, refine: usize) -> Result<Gram> {
    let ip = InnerProduct::refined(WeightSpec::new(params)?, refine);
    let s = StructureSet::<f64>::build(params);
    let labels = params.labels(wmax);
    let psi = psi_poly::<f64>(params.ell);
    let hs = labels
        .par_iter()
        .map(|&(w, r)| EigenFunction::build(&s, w, r).map(|f| psi.mul_vec_poly(&f.poly)))
        .collect::<Result<Vec<_>>>()?;
    let entries = (0..labels.len())
        .into_par_iter()
        .map(|a| (0..labels.len()).map(|b| ip.inner_h(&hs[a], &hs[b])).collect())
        .collect();
    Ok(Gram { labels, entries })
}

/// `∫ P_w W P_{w'}ᵗ du` computed directly from the packages.
pub fn package_inner(params: &Params, w: usize, w2: usize) -> Result<Matrix<f64>> {
    let ip = InnerProduct::new(WeightSpec::new(params)?);
    let s = StructureSet::<f64>::build(params);
    let (p, p2) = (assemble_p_with(&s, w)?.p, assemble_p_with(&s, w2)?.p);
    let dim = params.dim();
    Ok(Matrix::from_fn(dim, dim, |r, r2| ip.inner_vec(&p2.row(r2), &p.row(r))))
}
