//! Matrix hypergeometric series `₂F₁` and `₂H₁`.

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, Matrix, VecPoly, TRIM_TOL};
use crate::scalar::Scalar;

/// Minimum distance of the spectrum of `C` from `{0, −1, −2, …}`.
pub const SPECTRUM_GAP: f64 = 1e-8;

/// Extra terms allowed past the expected degree before giving up.
pub const TERMINATION_MARGIN: usize = 10;

/// Distance of the spectrum of `c` from the non-positive integers.
pub fn spectrum_distance<T: Scalar>(c: &Matrix<T>) -> f64 {
    eigenvalues(c)
        .into_iter()
        .map(|z| {
            let nearest = z.re.round().min(0.0);
            (z - nearest).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

fn check_spectrum<T: Scalar>(c: &Matrix<T>) -> Result<()> {
    let distance = spectrum_distance(c);
    if distance > SPECTRUM_GAP {
        Ok(())
    } else {
        Err(Error::SpectrumHitsNegativeIntegers { distance })
    }
}

/// Terms `(C;A;B)_j / j!` for `j = 0..=terms`, from
/// `(C;A;B)_{j+1} = (C+j)⁻¹(A+j)(B+j)(C;A;B)_j`.
pub fn f1_coeffs<T: Scalar>(
    c: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    terms: usize,
) -> Result<Vec<Matrix<T>>> {
    check_spectrum(c)?;
    let mut out = vec![Matrix::identity(c.rows())];
    for j in 0..terms {
        let jt = T::from_usize(j);
        let step = &(&c.shift(&jt).inverse()? * &a.shift(&jt)) * &b.shift(&jt);
        let next = (&step * out.last().unwrap()).scale(&(T::one() / T::from_usize(j + 1)));
        out.push(next);
    }
    Ok(out)
}

/// The numerator `j² + j(U − 1) + V` of the `₂H₁` recursion.
fn h1_numerator<T: Scalar>(u: &Matrix<T>, v: &Matrix<T>, j: usize) -> Matrix<T> {
    let jt = T::from_usize(j);
    &u.shift(&-T::one()).scale(&jt) + &v.shift(&(jt.clone() * jt))
}

/// Matrix `₂H₁(U; V; C)` series.
#[derive(Debug, Clone, PartialEq)]
pub struct H1Series<T> {
    pub c: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
    /// `[C;U;V]_j / j!`.
    pub coeffs: Vec<Matrix<T>>,
}

/// Terms `[C;U;V]_j / j!` for `j = 0..=terms`, from
/// `[C;U;V]_{j+1} = (C+j)⁻¹(j² + j(U−1) + V)[C;U;V]_j`.
pub fn h1_coeffs<T: Scalar>(
    c: &Matrix<T>,
    u: &Matrix<T>,
    v: &Matrix<T>,
    terms: usize,
) -> Result<H1Series<T>> {
    check_spectrum(c)?;
    let mut coeffs = vec![Matrix::identity(c.rows())];
    for j in 0..terms {
        let step = &c.shift(&T::from_usize(j)).inverse()? * &h1_numerator(u, v, j);
        let next = (&step * coeffs.last().unwrap()).scale(&(T::one() / T::from_usize(j + 1)));
        coeffs.push(next);
    }
    Ok(H1Series { c: c.clone(), u: u.clone(), v: v.clone(), coeffs })
}

/// How [`H1Series::apply`] treats the tail of the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Sum the available terms.
    Truncate,
    /// Fail unless the last two terms are negligible.
    MustTerminate,
}

fn negligible<T: Scalar>(c: &[T], scale: f64) -> bool {
    c.iter().all(|x| x.negligible(TRIM_TOL, scale))
}

impl<T: Scalar> H1Series<T> {
    /// `Σ_{j ≤ terms} u^j [C;U;V]_j v0 / j!`, trimmed.
    pub fn apply(&self, v0: &[T], terms: usize, mode: Truncation) -> Result<VecPoly<T>> {
        if v0.len() != self.c.cols() {
            return Err(Error::Shape(format!("start vector of length {}", v0.len())));
        }
        let coeffs: Vec<Vec<T>> =
            self.coeffs.iter().take(terms + 1).map(|m| m.mul_vec(v0)).collect();
        let poly = VecPoly::new(v0.len(), coeffs)?;
        if mode == Truncation::MustTerminate {
            let scale = poly.max_abs();
            let tail = poly.coeffs().iter().rev().take(2);
            if poly.len() < 2 || !tail.clone().all(|c| negligible(c, scale)) {
                return Err(Error::NoTermination { cap: terms });
            }
        }
        Ok(poly.trimmed())
    }
}

/// Polynomial solution of `u(1−u)F″ + (C − uU)F′ − VF = 0` with `F(0) = v0`.
///
/// Runs the vector form of the `₂H₁` recursion until two consecutive terms
/// are negligible, at most `expected_degree + TERMINATION_MARGIN` steps, and
/// requires the resulting degree to equal `expected_degree`.
pub fn terminating_solution<T: Scalar>(
    c: &Matrix<T>,
    u: &Matrix<T>,
    v: &Matrix<T>,
    v0: &[T],
    expected_degree: usize,
) -> Result<VecPoly<T>> {
    check_spectrum(c)?;
    let cap = expected_degree + TERMINATION_MARGIN;
    let mut coeffs = vec![v0.to_vec()];
    let mut scale = coeffs[0].iter().map(Scalar::magnitude).fold(0.0, f64::max);
    let mut quiet = 0;
    for j in 0..cap {
        let step = &c.shift(&T::from_usize(j)).inverse()? * &h1_numerator(u, v, j);
        let inv = T::one() / T::from_usize(j + 1);
        let next: Vec<T> =
            step.mul_vec(coeffs.last().unwrap()).into_iter().map(|x| x * inv.clone()).collect();
        scale = next.iter().map(Scalar::magnitude).fold(scale, f64::max);
        coeffs.push(next);
        if negligible(coeffs.last().unwrap(), scale) {
            quiet += 1;
            if quiet == 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if quiet < 2 {
        return Err(Error::NoTermination { cap });
    }
    let found = coeffs.iter().rposition(|c| !negligible(c, scale));
    let Some(found) = found else {
        return Ok(VecPoly::zero(v0.len()));
    };
    if found != expected_degree {
        return Err(Error::WrongDegree { expected: expected_degree, found });
    }
    coeffs.truncate(found + 1);
    VecPoly::new(v0.len(), coeffs)
}
