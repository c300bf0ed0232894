//! Batch verification of the whole construction over a parameter grid.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{t_recursion_residual, EigenFunction};
use crate::linalg::VecPoly;
use crate::operators::{conjugation_residual, d_eigen_residual, e_eigen_residual, Operator};
use crate::orthogonality::gram;
use crate::params::{spectrum_injectivity_check, Params};
use crate::recurrence::{blocks, three_term_residual_with};
use crate::scalar::Rational;
use crate::spectral::{build_m, charpoly_deviation};
use crate::structure::StructureSet;

pub const EIGEN_TOL: f64 = 1e-9;
pub const LEADING_TOL: f64 = 1e-10;
pub const CONJUGATION_TOL: f64 = 1e-9;
pub const CHARPOLY_TOL: f64 = 1e-7;
pub const SUPERDIAGONAL_TOL: f64 = 1e-10;
pub const GRAM_TOL: f64 = 1e-9;
pub const THREE_TERM_TOL: f64 = 1e-9;
pub const ROW_SUM_TOL: f64 = 1e-12;
pub const T_RECURSION_TOL: f64 = 1e-9;
/// A non-eigenfunction must leave at least this t-recursion residual.
pub const NEGATIVE_CONTROL_FLOOR: f64 = 1e-3;
/// Random polynomials per grid point in the conjugation check.
pub const CONJUGATION_SAMPLES: usize = 50;
/// Largest `w` of the exact injectivity check.
pub const INJECTIVITY_WMAX: usize = 8;

/// Group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Eigen,
    Ortho,
    Recursion,
    All,
}

impl Suite {
    fn covers(self, part: Suite) -> bool {
        self == Suite::All || self == part
    }
}

/// Aggregated outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub wall_ms: f64,
    /// One entry per failing parameter set.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub params: Vec<Params>,
    pub wmax: usize,
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `n ∈ {2,3}`, `k ∈ 1..n−1`, `ℓ ∈ {0,1,2}`, `m ∈ {0,1}`.
pub fn default_grid() -> Vec<Params> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for k in 1..n {
            for ell in 0..=2 {
                for m in 0..=1 {
                    out.push(Params::integer(n, k, ell, m));
                }
            }
        }
    }
    out
}

/// Uniform coefficients in `[−1, 1]`.
pub fn random_poly(rng: &mut impl Rng, dim: usize, degree: usize) -> VecPoly<f64> {
    let coeffs =
        (0..=degree).map(|_| (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect();
    VecPoly::new(dim, coeffs).expect("consistent dims")
}

struct PointCheck {
    name: &'static str,
    tolerance: f64,
    value: f64,
    failure: Option<String>,
    ms: f64,
}

fn timed(
    name: &'static str,
    tolerance: f64,
    params: &Params,
    f: impl FnOnce() -> Result<(f64, Option<String>)>,
) -> PointCheck {
    let start = Instant::now();
    let (value, failure) = match f() {
        Ok((value, note)) => {
            let failure = if value <= tolerance { note } else { Some(format!("{value:e}")) };
            (value, failure)
        }
        Err(e) => (f64::INFINITY, Some(e.to_string())),
    };
    PointCheck {
        name,
        tolerance,
        value,
        failure: failure.map(|f| format!("{params}: {f}")),
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn eigenfunctions(s: &StructureSet<f64>, wmax: usize) -> Result<Vec<EigenFunction<f64>>> {
    s.params.labels(wmax).into_iter().map(|(w, r)| EigenFunction::build(s, w, r)).collect()
}

fn eigen_checks(params: &Params, wmax: usize) -> Vec<PointCheck> {
    let s = StructureSet::<f64>::build(params);
    let fams = eigenfunctions(&s, wmax);
    let fams = fams.as_ref().map_err(Clone::clone);
    let each = |f: &dyn Fn(&EigenFunction<f64>) -> f64| -> Result<(f64, Option<String>)> {
        Ok((fams.clone()?.iter().map(f).fold(0.0, f64::max), None))
    };
    vec![
        timed("eigen_d", EIGEN_TOL, params, || {
            each(&|f| d_eigen_residual(&s, &f.poly, &f.lambda).relative())
        }),
        timed("eigen_e", EIGEN_TOL, params, || {
            each(&|f| e_eigen_residual(&s, &f.poly, &f.mu).relative())
        }),
        timed("degree_leading", LEADING_TOL, params, || {
            let fams = fams.clone()?;
            let bad: Vec<String> = fams
                .iter()
                .filter(|f| !f.leading_shape_ok(LEADING_TOL))
                .map(|f| format!("(w={}, r={})", f.w, f.r))
                .collect();
            let tail = fams
                .iter()
                .map(|f| {
                    let x = f.leading();
                    let scale = f.poly.max_abs().max(f64::MIN_POSITIVE);
                    x[f.r + 1..].iter().fold(0.0f64, |acc, v| acc.max(v.abs() / scale))
                })
                .fold(0.0, f64::max);
            Ok((tail, (!bad.is_empty()).then(|| format!("bad leading shape at {}", bad.join(" ")))))
        }),
        timed("conjugation", CONJUGATION_TOL, params, || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let mut worst: f64 = 0.0;
            for _ in 0..CONJUGATION_SAMPLES {
                let degree = rng.random_range(0..=4);
                let f = random_poly(&mut rng, params.dim(), degree);
                let samples: Vec<f64> = (0..8).map(|_| rng.random_range(0.01..0.99)).collect();
                for op in [Operator::D, Operator::E] {
                    worst = worst.max(conjugation_residual(&s, op, &f, &samples)?.relative());
                }
            }
            Ok((worst, None))
        }),
        timed("charpoly", CHARPOLY_TOL, params, || {
            let mut worst: f64 = 0.0;
            for (w, r) in params.labels(wmax) {
                worst = worst.max(charpoly_deviation(&s, &params.lambda::<f64>(w, r))?);
            }
            Ok((worst, None))
        }),
        timed("superdiagonal", SUPERDIAGONAL_TOL, params, || {
            let base = build_m(&s, &0.0)?.superdiagonal();
            let mut worst: f64 = 0.0;
            for (w, r) in params.labels(wmax) {
                let sup = build_m(&s, &params.lambda::<f64>(w, r))?.superdiagonal();
                for (a, b) in sup.iter().zip(&base) {
                    worst = worst.max((a - b).abs() / b.abs().max(1.0));
                }
            }
            Ok((worst, None))
        }),
        timed("exact_identities", 0.0, params, || {
            let labels = params.labels(wmax.max(INJECTIVITY_WMAX));
            let mismatches = labels
                .iter()
                .filter(|&&(w, r)| {
                    let lambda: Rational = params.lambda(w, r);
                    params.mu::<Rational>(w, r) != params.mu_of_lambda(r, &lambda)
                })
                .count();
            let injective = spectrum_injectivity_check(params, wmax.max(INJECTIVITY_WMAX));
            let failures = mismatches + usize::from(!injective);
            Ok((failures as f64, None))
        }),
        timed("t_recursion", T_RECURSION_TOL, params, || {
            let worst = fams
                .clone()?
                .iter()
                .map(|f| t_recursion_residual(&s, &f.poly, &f.lambda).relative())
                .fold(0.0, f64::max);
            let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
            let junk = random_poly(&mut rng, params.dim(), 3);
            let control = t_recursion_residual(&s, &junk, &params.lambda::<f64>(1, 0)).relative();
            let note = (control <= NEGATIVE_CONTROL_FLOOR)
                .then(|| format!("negative control residual only {control:e}"));
            Ok((worst, note))
        }),
    ]
}

fn ortho_checks(params: &Params, wmax: usize) -> Vec<PointCheck> {
    let g = gram(params, wmax);
    vec![
        timed("gram_vector", GRAM_TOL, params, || {
            let g = g.clone()?;
            let note = (g.min_diagonal() <= 0.0).then(|| "non-positive Gram diagonal".to_string());
            Ok((g.max_off_diagonal_ratio(), note))
        }),
        timed("gram_matrix", GRAM_TOL, params, || Ok((g.clone()?.max_matrix_ratio(), None))),
    ]
}

fn recursion_checks(params: &Params, wmax: usize) -> Vec<PointCheck> {
    let s = StructureSet::<f64>::build(params);
    vec![
        timed("three_term", THREE_TERM_TOL, params, || {
            let mut worst: f64 = 0.0;
            for w in 0..=wmax {
                worst = worst.max(three_term_residual_with(&s, w)?.relative());
            }
            Ok((worst, None))
        }),
        timed("stochastic", ROW_SUM_TOL, params, || {
            let mut worst: f64 = 0.0;
            for w in 0..=wmax {
                let b = blocks::<f64>(params, w)?;
                worst = b.row_sums().iter().fold(worst, |acc, x| acc.max((x - 1.0).abs()));
            }
            Ok((worst, None))
        }),
    ]
}

fn point(params: &Params, wmax: usize, suite: Suite) -> Vec<PointCheck> {
    if let Err(e) = params.validate() {
        return vec![PointCheck {
            name: "params",
            tolerance: 0.0,
            value: f64::INFINITY,
            failure: Some(format!("{params}: {e}")),
            ms: 0.0,
        }];
    }
    let mut out = Vec::new();
    if suite.covers(Suite::Eigen) {
        out.extend(eigen_checks(params, wmax));
    }
    if suite.covers(Suite::Ortho) {
        out.extend(ortho_checks(params, wmax));
    }
    if suite.covers(Suite::Recursion) {
        out.extend(recursion_checks(params, wmax));
    }
    out
}

/// Runs `suite` over every parameter set; results are merged per check name
/// in a fixed order independent of scheduling.
pub fn run(params: &[Params], wmax: usize, suite: Suite) -> RunReport {
    let per_point: Vec<Vec<PointCheck>> =
        params.par_iter().map(|p| point(p, wmax, suite)).collect();
    let mut checks: Vec<CheckResult> = Vec::new();
    for pc in per_point.into_iter().flatten() {
        let entry = match checks.iter_mut().position(|c| c.name == pc.name) {
            Some(i) => &mut checks[i],
            None => {
                checks.push(CheckResult {
                    name: pc.name.to_string(),
                    passed: true,
                    max_residual: 0.0,
                    tolerance: pc.tolerance,
                    wall_ms: 0.0,
                    failures: Vec::new(),
                });
                checks.last_mut().unwrap()
            }
        };
        entry.max_residual = entry.max_residual.max(pc.value);
        entry.wall_ms += pc.ms;
        if let Some(f) = pc.failure {
            entry.passed = false;
            entry.failures.push(f);
        }
    }
    RunReport { params: params.to_vec(), wmax, suite, checks }
}

/// Validates a single parameter set before running, for callers that need
/// to distinguish bad input from numerical failure.
pub fn run_checked(params: &Params, wmax: usize, suite: Suite) -> Result<RunReport> {
    params.validate()?;
    if suite.covers(Suite::Ortho) {
        params.validate_for_weight()?;
    }
    Ok(run(std::slice::from_ref(params), wmax, suite))
}

/// Maps an error to the process exit code: 2 for bad input, 3 for numerical failure.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParams(_) | Error::OutsideSet { .. } | Error::NegativeM | Error::NotApplicable(_) => 2,
        _ => 3,
    }
}
