//! Three-term recursion `(1−u)P_w = A_w P_{w−1} + B_w P_w + C_w P_{w+1}`
//! with blocks built from the one-step coefficients `a_i²`, `b_i²`.

use crate::error::{Error, Result};
use crate::family::assemble_p_with;
use crate::linalg::{MatPoly, Matrix};
use crate::params::Params;
use crate::residual::Residual;
use crate::scalar::Scalar;
use crate::structure::StructureSet;

/// Lower bound on block entries before they count as negative.
pub const NEGATIVITY_TOL: f64 = 1e-14;

/// The three nonzero coefficient indices `1`, `k+1`, `n+1` of a one-step type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shift {
    First,
    Middle,
    Last,
}

pub const SHIFTS: [Shift; 3] = [Shift::First, Shift::Middle, Shift::Last];

struct Vars<T> {
    w: T,
    r: T,
    m: T,
    n: T,
    k: T,
    l: T,
}

fn vars<T: Scalar>(params: &Params, w: usize, r: usize) -> Vars<T> {
    Vars {
        w: T::from_usize(w),
        r: T::from_usize(r),
        m: params.m(),
        n: params.n(),
        k: params.k(),
        l: params.ell(),
    }
}

fn ratio<T: Scalar>(num: T, den: T, what: &str) -> Result<T> {
    if den.is_zero() {
        return Err(Error::DegenerateCoefficient(format!("{what} has a zero denominator")));
    }
    Ok(num / den)
}

/// `a_i²(m(w, r))` for `i ∈ {1, k+1, n+1}`.
pub fn a_sq<T: Scalar>(params: &Params, i: Shift, w: usize, r: usize) -> Result<T> {
    let Vars { w, r, m, n, k, l } = vars::<T>(params, w, r);
    let two = T::from_i64(2);
    let (num, den) = match i {
        Shift::First => (
            (w.clone() + k.clone()) * (w.clone() + l.clone() + n.clone()),
            (w.clone() + l.clone() - r.clone() + k)
                * (two * w + m + n + l + r),
        ),
        Shift::Middle => (
            (l.clone() - r.clone()) * (r.clone() + n.clone() - k.clone()),
            (w.clone() + l - r.clone() + k.clone()) * (w + m + n + two * r - k),
        ),
        Shift::Last => (
            (w.clone() + m.clone() + n.clone() + l.clone() + r.clone() - k.clone())
                * (w.clone() + m.clone() + r.clone()),
            (w.clone() + m.clone() + n.clone() + two.clone() * r.clone() - k)
                * (two * w + m + n + l + r),
        ),
    };
    ratio(num, den, "a²")
}

/// `b_i²(m(w, r) + e_j)` for `i, j ∈ {1, k+1, n+1}`.
pub fn b_sq<T: Scalar>(params: &Params, i: Shift, j: Shift, w: usize, r: usize) -> Result<T> {
    let Vars { w, r, m, n, k, l } = vars::<T>(params, w, r);
    let one = T::one();
    let two = T::from_i64(2);
    // Recurring factors.
    let g = w.clone() + l.clone() - r.clone() + k.clone(); // w+ℓ−r+k
    let h = w.clone() + m.clone() + n.clone() + two.clone() * r.clone() - k.clone(); // w+m+n+2r−k
    let q = two * w.clone() + m.clone() + n.clone() + l.clone() + r.clone(); // 2w+m+n+ℓ+r
    let top = w.clone() + m.clone() + n.clone() + l.clone() + r.clone(); // w+m+n+ℓ+r
    let low = w.clone() + m + n + r.clone() - k.clone(); // w+m+n+r−k
    let wl = w.clone() * (w.clone() + l.clone() + k.clone());
    let rl = r.clone() * (l.clone() - r.clone() + k.clone());
    let (num, den) = match (i, j) {
        (Shift::First, Shift::First) => (
            (w.clone() + one.clone()) * (w + l + k + one.clone()),
            (g + one.clone()) * (q + one),
        ),
        (Shift::First, Shift::Middle) => (wl, (g - one) * q),
        (Shift::First, Shift::Last) => (wl, g * (q - one)),
        (Shift::Middle, Shift::First) => (rl, (g + one) * h),
        (Shift::Middle, Shift::Middle) => (
            (r.clone() + one.clone()) * (l - r + k - one.clone()),
            (g - one.clone()) * (h + one),
        ),
        (Shift::Middle, Shift::Last) => (rl, g * (h - one)),
        (Shift::Last, Shift::First) => (top * low, h * (q + one)),
        (Shift::Last, Shift::Middle) => (top * low, (h + one) * q),
        (Shift::Last, Shift::Last) => (
            (top - one.clone()) * (low - one.clone()),
            (h - one.clone()) * (q - one),
        ),
    };
    ratio(num, den, "b²")
}

/// `a_j²(m(w,r))·b_i²(m(w,r)+e_j)`, zero without evaluating `b²` when `a²` vanishes.
pub fn transition<T: Scalar>(params: &Params, j: Shift, i: Shift, w: usize, r: usize) -> Result<T> {
    let a = a_sq::<T>(params, j, w, r)?;
    if a.is_zero() {
        return Ok(T::zero());
    }
    Ok(a * b_sq::<T>(params, i, j, w, r)?)
}

/// The blocks `A_w` (upper bidiagonal), `B_w` (tridiagonal), `C_w` (lower bidiagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionBlocks<T> {
    pub w: usize,
    pub a: Matrix<T>,
    pub b: Matrix<T>,
    pub c: Matrix<T>,
}

impl<T: Scalar> RecursionBlocks<T> {
    /// `Σ_s (A_w + B_w + C_w)_{rs}` for each `r`.
    pub fn row_sums(&self) -> Vec<T> {
        let total = &(&self.a + &self.b) + &self.c;
        (0..total.rows()).map(|r| total.row(r).iter().fold(T::zero(), |acc, x| acc + x.clone())).collect()
    }

    /// Smallest entry across the three blocks.
    pub fn min_entry(&self) -> f64 {
        [&self.a, &self.b, &self.c]
            .iter()
            .flat_map(|m| m.as_slice().iter().map(Scalar::to_f64))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Builds `A_w, B_w, C_w` from the coefficient formulas and checks that every
/// entry is nonnegative.
pub fn blocks<T: Scalar>(params: &Params, w: usize) -> Result<RecursionBlocks<T>> {
    let dim = params.dim();
    let mut a = Matrix::zeros(dim, dim);
    let mut b = Matrix::zeros(dim, dim);
    let mut c = Matrix::zeros(dim, dim);
    let t = |j, i, r| transition::<T>(params, j, i, w, r);
    for r in 0..dim {
        a[(r, r)] = t(Shift::Last, Shift::First, r)?;
        c[(r, r)] = t(Shift::First, Shift::Last, r)?;
        b[(r, r)] = SHIFTS.iter().try_fold(T::zero(), |acc, &j| t(j, j, r).map(|x| acc + x))?;
        if r + 1 < dim {
            a[(r, r + 1)] = t(Shift::Middle, Shift::First, r)?;
            b[(r, r + 1)] = t(Shift::Middle, Shift::Last, r)?;
        }
        if r > 0 {
            c[(r, r - 1)] = t(Shift::First, Shift::Middle, r)?;
            b[(r, r - 1)] = t(Shift::Last, Shift::Middle, r)?;
        }
    }
    let out = RecursionBlocks { w, a, b, c };
    let floor = if T::EXACT { 0.0 } else { -NEGATIVITY_TOL };
    let min = out.min_entry();
    if min < floor {
        return Err(Error::NegativeProbability { w, value: min });
    }
    Ok(out)
}

/// Coefficient sup-norm of `(1−u)P_w − A_wP_{w−1} − B_wP_w − C_wP_{w+1}`,
/// with `P_{−1} = 0`.
pub fn three_term_residual<T: Scalar>(params: &Params, w: usize) -> Result<Residual> {
    params.validate()?;
    let s = StructureSet::<T>::build(params);
    three_term_residual_with(&s, w)
}

pub fn three_term_residual_with<T: Scalar>(s: &StructureSet<T>, w: usize) -> Result<Residual> {
    let params = &s.params;
    let dim = params.dim();
    let bl = blocks::<T>(params, w)?;
    let prev = if w == 0 { MatPoly::zero(dim, dim) } else { assemble_p_with(s, w - 1)?.p };
    let cur = assemble_p_with(s, w)?.p;
    let next = assemble_p_with(s, w + 1)?.p;
    let terms = [
        cur.clone(),
        cur.shift_mul().scale(&-T::one()),
        prev.left_mul(&bl.a).scale(&-T::one()),
        cur.left_mul(&bl.b).scale(&-T::one()),
        next.left_mul(&bl.c).scale(&-T::one()),
    ];
    let scale = terms.iter().map(MatPoly::max_abs).fold(0.0, f64::max);
    let total = terms.iter().skip(1).fold(terms[0].clone(), |acc, t| acc.add(t));
    Ok(Residual::new(total.max_abs(), scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p0() -> Params {
        Params::integer(2, 1, 1, 0)
    }

    fn frac(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn base_point_coefficients() {
        let p = p0();
        assert_eq!(a_sq::<Rational>(&p, Shift::First, 0, 0).unwrap(), frac(1, 2));
        assert_eq!(a_sq::<Rational>(&p, Shift::Middle, 0, 0).unwrap(), frac(1, 2));
        assert_eq!(a_sq::<Rational>(&p, Shift::Last, 0, 0).unwrap(), frac(0, 1));
        assert_eq!(b_sq::<Rational>(&p, Shift::First, Shift::First, 0, 0).unwrap(), frac(1, 4));
    }

    #[test]
    fn base_point_blocks() {
        let b0 = blocks::<Rational>(&p0(), 0).unwrap();
        assert!(b0.a.is_zero());
        assert_eq!(b0.row_sums(), vec![frac(1, 1), frac(1, 1)]);
        let b3 = blocks::<f64>(&p0(), 3).unwrap();
        assert!(b3.min_entry() >= 0.0);
        assert!([&b3.a, &b3.b, &b3.c].iter().all(|m| m.as_slice().iter().all(|x| *x <= 1.0)));
    }

    #[test]
    fn exact_three_term_relation() {
        for params in [p0(), Params::integer(3, 2, 2, 1), Params::integer(3, 1, 0, 0)] {
            for w in 0..4 {
                assert_eq!(three_term_residual::<Rational>(&params, w).unwrap().abs, 0.0);
            }
        }
        for w in 0..5 {
            assert!(three_term_residual::<f64>(&p0(), w).unwrap().within(1e-10));
        }
    }
}
