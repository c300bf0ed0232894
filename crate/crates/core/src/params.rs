//! Model parameters, the admissible label set and the closed-form eigenvalues.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// How the parameters `(m, n)` enter the formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    /// The group case: integers `n ≥ 2` and `m`.
    Integer { n: i64, m: i64 },
    /// Continuous extension, `alpha` replacing `m` and `beta` replacing `n - 1`.
    Jacobi { alpha: f64, beta: f64 },
}

/// Parameters of a one-step K-type together with the model mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(flatten)]
    pub mode: Mode,
    pub k: i64,
    pub ell: usize,
}

impl Params {
    pub fn integer(n: i64, k: i64, ell: usize, m: i64) -> Self {
        Params { mode: Mode::Integer { n, m }, k, ell }
    }

    pub fn jacobi(alpha: f64, beta: f64, k: i64, ell: usize) -> Self {
        Params { mode: Mode::Jacobi { alpha, beta }, k, ell }
    }

    /// Jacobi-mode twin of an integer parameter set, `(alpha, beta) = (m, n - 1)`.
    pub fn as_jacobi(&self) -> Self {
        match self.mode {
            Mode::Integer { n, m } => Params::jacobi(m as f64, (n - 1) as f64, self.k, self.ell),
            Mode::Jacobi { .. } => *self,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.mode, Mode::Integer { .. })
    }

    /// Matrix dimension `ℓ + 1`.
    pub fn dim(&self) -> usize {
        self.ell + 1
    }

    /// `n` (or `beta + 1`) in the scalar type `T`.
    pub fn n<T: Scalar>(&self) -> T {
        match self.mode {
            Mode::Integer { n, .. } => T::from_i64(n),
            Mode::Jacobi { beta, .. } => T::from_f64(beta) + T::one(),
        }
    }

    /// `m` (or `alpha`) in the scalar type `T`.
    pub fn m<T: Scalar>(&self) -> T {
        match self.mode {
            Mode::Integer { m, .. } => T::from_i64(m),
            Mode::Jacobi { alpha, .. } => T::from_f64(alpha),
        }
    }

    pub fn n_f64(&self) -> f64 {
        self.n::<f64>()
    }

    pub fn m_f64(&self) -> f64 {
        self.m::<f64>()
    }

    /// Integer `m`; `None` in Jacobi mode.
    pub fn m_int(&self) -> Option<i64> {
        match self.mode {
            Mode::Integer { m, .. } => Some(m),
            Mode::Jacobi { .. } => None,
        }
    }

    pub fn k<T: Scalar>(&self) -> T {
        T::from_i64(self.k)
    }

    pub fn ell<T: Scalar>(&self) -> T {
        T::from_usize(self.ell)
    }

    /// Checks every structural invariant of the parameters.
    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        match self.mode {
            Mode::Integer { n, .. } => {
                if n < 2 {
                    return Err(Error::InvalidParams("n ≥ 2 violated".into()));
                }
                if k < 1 {
                    return Err(Error::InvalidParams("k ≥ 1 violated".into()));
                }
                if k > n - 1 {
                    return Err(Error::InvalidParams("k ≤ n−1 violated".into()));
                }
            }
            Mode::Jacobi { alpha, beta } => {
                if !alpha.is_finite() || !beta.is_finite() {
                    return Err(Error::InvalidParams("alpha and beta must be finite".into()));
                }
                if k < 1 {
                    return Err(Error::InvalidParams("k ≥ 1 violated".into()));
                }
                if alpha <= -1.0 {
                    return Err(Error::InvalidParams("alpha > −1 violated".into()));
                }
                if beta <= -1.0 {
                    return Err(Error::InvalidParams("beta > −1 violated".into()));
                }
                if beta + 1.0 - k as f64 <= 0.0 {
                    return Err(Error::InvalidParams("beta + 1 − k > 0 violated".into()));
                }
            }
        }
        Ok(())
    }

    /// Additional requirement of the weight-dependent operations.
    pub fn validate_for_weight(&self) -> Result<()> {
        self.validate()?;
        match self.mode {
            Mode::Integer { m, .. } if m < 0 => Err(Error::NegativeM),
            _ => Ok(()),
        }
    }

    /// Membership of `(w, r)` in `S = {0 ≤ w, 0 ≤ r ≤ ℓ, 0 ≤ m + w + r}`.
    pub fn in_set(&self, w: usize, r: usize) -> bool {
        if r > self.ell {
            return false;
        }
        match self.mode {
            Mode::Integer { m, .. } => m + (w + r) as i64 >= 0,
            Mode::Jacobi { alpha, .. } => alpha + (w + r) as f64 >= 0.0,
        }
    }

    /// All labels of `S` with `w ≤ wmax`, ordered by `(w, r)`.
    pub fn labels(&self, wmax: usize) -> Vec<(usize, usize)> {
        (0..=wmax)
            .flat_map(|w| (0..=self.ell).map(move |r| (w, r)))
            .filter(|&(w, r)| self.in_set(w, r))
            .collect()
    }

    /// `λ(w, r) = −w(w+m+ℓ+r+n) − r(m+r−k+n)`.
    pub fn lambda<T: Scalar>(&self, w: usize, r: usize) -> T {
        if let Some(exact) = self.lambda_int(w, r) {
            return T::from_i64(exact);
        }
        let (n, m, k, ell) = (self.n::<T>(), self.m::<T>(), self.k::<T>(), self.ell::<T>());
        let (w, r) = (T::from_usize(w), T::from_usize(r));
        // `+ 0` turns a floating −0 into +0 so integral inputs match the exact path.
        -(w.clone() * (w + m.clone() + ell + r.clone() + n.clone())) - r.clone() * (m + r - k + n)
            + T::zero()
    }

    /// `μ(w, r) = −w(m+ℓ−r)(w+m+ℓ+r+n) − r(m−k)(m+r−k+n)`.
    pub fn mu<T: Scalar>(&self, w: usize, r: usize) -> T {
        if let Some(exact) = self.mu_int(w, r) {
            return T::from_i64(exact);
        }
        let (n, m, k, ell) = (self.n::<T>(), self.m::<T>(), self.k::<T>(), self.ell::<T>());
        let (w, r) = (T::from_usize(w), T::from_usize(r));
        -(w.clone()
            * (m.clone() + ell.clone() - r.clone())
            * (w + m.clone() + ell + r.clone() + n.clone()))
            - r.clone() * (m.clone() - k.clone()) * (m + r - k + n)
            + T::zero()
    }

    /// Eigenvalues of `M(λ)`: `μ_r(λ) = λ(m+ℓ−r) + r(m+r−k+n)(ℓ−r+k)`.
    pub fn mu_of_lambda<T: Scalar>(&self, r: usize, lambda: &T) -> T {
        let (n, m, k, ell) = (self.n::<T>(), self.m::<T>(), self.k::<T>(), self.ell::<T>());
        let r = T::from_usize(r);
        lambda.clone() * (m.clone() + ell.clone() - r.clone())
            + r.clone() * (m + r.clone() - k.clone() + n) * (ell - r + k)
    }

    /// Exact `λ(w, r)`; `None` in Jacobi mode.
    pub fn lambda_int(&self, w: usize, r: usize) -> Option<i64> {
        let Mode::Integer { n, m } = self.mode else { return None };
        let (w, r, k, ell) = (w as i64, r as i64, self.k, self.ell as i64);
        Some(-w * (w + m + ell + r + n) - r * (m + r - k + n))
    }

    /// Exact `μ(w, r)`; `None` in Jacobi mode.
    pub fn mu_int(&self, w: usize, r: usize) -> Option<i64> {
        let Mode::Integer { n, m } = self.mode else { return None };
        let (w, r, k, ell) = (w as i64, r as i64, self.k, self.ell as i64);
        Some(-w * (m + ell - r) * (w + m + ell + r + n) - r * (m - k) * (m + r - k + n))
    }

    /// Exact `μ_r(λ)`; `None` in Jacobi mode.
    pub fn mu_of_lambda_int(&self, r: usize, lambda: i64) -> Option<i64> {
        let Mode::Integer { n, m } = self.mode else { return None };
        let (r, k, ell) = (r as i64, self.k, self.ell as i64);
        Some(lambda * (m + ell - r) + r * (m + r - k + n) * (ell - r + k))
    }

    pub fn spectral_pair(&self, w: usize, r: usize) -> SpectralPair {
        SpectralPair { w, r, lambda: self.lambda(w, r), mu: self.mu(w, r) }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::Integer { n, m } => write!(f, "n={n} k={} ell={} m={m}", self.k, self.ell),
            Mode::Jacobi { alpha, beta } => {
                write!(f, "alpha={alpha} beta={beta} k={} ell={}", self.k, self.ell)
            }
        }
    }
}

/// Joint eigenvalues of the two operators for one label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPair {
    pub w: usize,
    pub r: usize,
    pub lambda: f64,
    pub mu: f64,
}

/// Whether `(w, r) ↦ (λ, μ)` is injective on `{0..=wmax} × {0..=ℓ} ∩ S`.
///
/// Integer mode compares in `i64`; Jacobi mode compares exactly in rationals
/// built from the binary values of `alpha` and `beta`.
pub fn spectrum_injectivity_check(params: &Params, wmax: usize) -> bool {
    let labels = params.labels(wmax);
    if params.is_integer() {
        let mut seen = HashSet::new();
        labels.iter().all(|&(w, r)| {
            seen.insert((params.lambda_int(w, r).unwrap(), params.mu_int(w, r).unwrap()))
        })
    } else {
        let mut seen = HashSet::new();
        labels
            .iter()
            .all(|&(w, r)| seen.insert((params.lambda::<Rational>(w, r), params.mu::<Rational>(w, r))))
    }
}
