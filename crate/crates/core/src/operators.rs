//! The two commuting differential operators, as exact coefficient transforms.
//!
//! u-forms act on `F(u)`; t-forms act on `H(t)` with `t = 1 − u`. The
//! hypergeometric t-forms `D̃`, `Ẽ` act on `F(t)` and satisfy
//! `Ψ·D̃F = −D(ΨF)`, `Ψ·ẼF = −E(ΨF)`.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, VecPoly};
use crate::residual::Residual;
use crate::scalar::Scalar;
use crate::structure::{psi_poly, StructureSet};

/// Remainder tolerance of the division by `(1 − t)`.
pub const DIVISIBILITY_TOL: f64 = 1e-9;

fn neg<T: Scalar>(p: &VecPoly<T>) -> VecPoly<T> {
    p.scale(&-T::one())
}

fn sum<T: Scalar>(dim: usize, parts: &[VecPoly<T>]) -> VecPoly<T> {
    parts.iter().fold(VecPoly::zero(dim), |acc, p| acc.add(p))
}

fn parts_scale<T: Scalar>(parts: &[VecPoly<T>]) -> f64 {
    parts.iter().map(VecPoly::max_abs).fold(0.0, f64::max)
}

/// Summands of `x(1−x)F″ + (C − xU)F′ − VF`.
fn hypergeometric_parts<T: Scalar>(
    c: &Matrix<T>,
    u: &Matrix<T>,
    v: &Matrix<T>,
    f: &VecPoly<T>,
) -> Vec<VecPoly<T>> {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let xd2 = d2.shift_mul();
    vec![
        xd2.clone(),
        neg(&xd2.shift_mul()),
        d1.left_mul(c),
        neg(&d1.left_mul(u).shift_mul()),
        neg(&f.left_mul(v)),
    ]
}

/// `x(1−x)F″ + (C − xU)F′ − VF`, the operator whose polynomial solutions
/// are the matrix hypergeometric functions.
pub fn hypergeometric_operator<T: Scalar>(
    c: &Matrix<T>,
    u: &Matrix<T>,
    v: &Matrix<T>,
    f: &VecPoly<T>,
) -> VecPoly<T> {
    sum(f.dim(), &hypergeometric_parts(c, u, v, f))
}

fn d_u_parts<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>) -> Vec<VecPoly<T>> {
    hypergeometric_parts(&s.u_minus_c(), &s.u, &s.v, f)
}

fn e_u_parts<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>) -> Vec<VecPoly<T>> {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    // (1−u)(M0 − M1 + uM1) = (M0 − M1) + u(2M1 − M0) − u²M1
    let m_const = &s.m0 - &s.m1;
    let m_lin = &s.m1.scale(&T::from_i64(2)) - &s.m0;
    vec![
        d2.left_mul(&m_const),
        d2.left_mul(&m_lin).shift_mul(),
        neg(&d2.left_mul(&s.m1).shift_mul().shift_mul()),
        d1.left_mul(&(&s.p1 - &s.p0)),
        neg(&d1.left_mul(&s.p1).shift_mul()),
        neg(&f.left_mul(&s.v).scale(&s.m_minus_k())),
    ]
}

/// `DF = u(1−u)F″ + (U − C − uU)F′ − VF`.
pub fn apply_d_u<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>) -> VecPoly<T> {
    sum(f.dim(), &d_u_parts(s, f))
}

/// `EF = (1−u)(M0 − M1 + uM1)F″ + (P1 − P0 − uP1)F′ − (m−k)VF`.
pub fn apply_e_u<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>) -> VecPoly<T> {
    sum(f.dim(), &e_u_parts(s, f))
}

fn eigen_residual<T: Scalar>(mut parts: Vec<VecPoly<T>>, f: &VecPoly<T>, eig: &T) -> Residual {
    parts.push(neg(&f.scale(eig)));
    let scale = parts_scale(&parts);
    Residual::new(sum(f.dim(), &parts).max_abs(), scale)
}

/// Coefficientwise `‖DF − λF‖∞` with the scale of the summands.
pub fn d_eigen_residual<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>, lambda: &T) -> Residual {
    eigen_residual(d_u_parts(s, f), f, lambda)
}

/// Coefficientwise `‖EF − μF‖∞` with the scale of the summands.
pub fn e_eigen_residual<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>, mu: &T) -> Residual {
    eigen_residual(e_u_parts(s, f), f, mu)
}

/// Splits `G(t) = (1 − t)Q(t) + R`, returning `(Q, R)`.
pub fn divide_one_minus_t<T: Scalar>(g: &VecPoly<T>) -> (VecPoly<T>, Vec<T>) {
    let dim = g.dim();
    let len = g.len();
    if len == 0 {
        return (VecPoly::zero(dim), vec![T::zero(); dim]);
    }
    // Synthetic division by (t − 1), negated at the end.
    let mut q = vec![vec![T::zero(); dim]; len - 1];
    let mut carry = vec![T::zero(); dim];
    for j in (0..len).rev() {
        let next: Vec<T> =
            g.coeffs()[j].iter().zip(&carry).map(|(a, b)| a.clone() + b.clone()).collect();
        if j == 0 {
            carry = next;
        } else {
            q[j - 1] = next.iter().map(|x| -x.clone()).collect();
            carry = next;
        }
    }
    (VecPoly::new(dim, q).expect("consistent dims"), carry)
}

fn divide_checked<T: Scalar>(g: &VecPoly<T>) -> Result<VecPoly<T>> {
    let (q, rem) = divide_one_minus_t(g);
    let residual = Residual::new(rem.iter().map(Scalar::magnitude).fold(0.0, f64::max), g.max_abs());
    let exact_ok = !T::EXACT || rem.iter().all(num_traits::Zero::is_zero);
    if exact_ok && residual.within(DIVISIBILITY_TOL) {
        Ok(q)
    } else {
        Err(Error::NotDivisible { remainder: residual.abs })
    }
}

/// `DH = −[t(1−t)H″ + (A0 − t(A0+n))H′ + (1−t)⁻¹(B0 + tB1)H]` for `H(t)`.
pub fn apply_d_t<T: Scalar>(s: &StructureSet<T>, h: &VecPoly<T>) -> Result<VecPoly<T>> {
    let d1 = h.derivative();
    let d2 = d1.derivative();
    let td2 = d2.shift_mul();
    let a0n = s.a0.shift(&s.n());
    let rational = h.left_mul(&s.b0).add(&h.left_mul(&s.b1).shift_mul());
    let parts = [
        td2.clone(),
        neg(&td2.shift_mul()),
        d1.left_mul(&s.a0),
        neg(&d1.left_mul(&a0n).shift_mul()),
        divide_checked(&rational)?,
    ];
    Ok(neg(&sum(h.dim(), &parts)))
}

/// `EH = −[t(1−t)MH″ + (C0 − tC1)H′ + (1−t)⁻¹(D0 + tD1)H]` for `H(t)`.
pub fn apply_e_t<T: Scalar>(s: &StructureSet<T>, h: &VecPoly<T>) -> Result<VecPoly<T>> {
    let d1 = h.derivative();
    let d2 = d1.derivative().left_mul(&s.m_diag);
    let td2 = d2.shift_mul();
    let rational = h.left_mul(&s.d0).add(&h.left_mul(&s.d1).shift_mul());
    let parts = [
        td2.clone(),
        neg(&td2.shift_mul()),
        d1.left_mul(&s.c0),
        neg(&d1.left_mul(&s.c1).shift_mul()),
        divide_checked(&rational)?,
    ];
    Ok(neg(&sum(h.dim(), &parts)))
}

/// `D̃F = t(1−t)F″ + (C − tU)F′ − VF` for `F(t)`.
pub fn apply_d_tilde<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>) -> VecPoly<T> {
    hypergeometric_operator(&s.c, &s.u, &s.v, f)
}

/// `ẼF = t(M0 − tM1)F″ + (P0 − tP1)F′ − (m−k)VF` for `F(t)`.
pub fn apply_e_tilde<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>) -> VecPoly<T> {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let parts = [
        d2.left_mul(&s.m0).shift_mul(),
        neg(&d2.left_mul(&s.m1).shift_mul().shift_mul()),
        d1.left_mul(&s.p0),
        neg(&d1.left_mul(&s.p1).shift_mul()),
        neg(&f.left_mul(&s.v).scale(&s.m_minus_k())),
    ];
    sum(f.dim(), &parts)
}

/// `Ψ·F` with `F` given in `t`, returned in `t`.
pub fn psi_times_t<T: Scalar>(s: &StructureSet<T>, f: &VecPoly<T>) -> VecPoly<T> {
    psi_poly::<T>(s.params.ell).mul_vec_poly(&f.reflect()).reflect()
}

/// Which operator a conjugation check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    D,
    E,
}

/// `max_u ‖Ψ(u)·(ÕF)(t) + (O(ΨF))(t)‖∞` over the sample points `u`, with
/// `t = 1 − u`, `F` given in `t` and `O` either `D` or `E`.
pub fn conjugation_residual<T: Scalar>(
    s: &StructureSet<T>,
    op: Operator,
    f: &VecPoly<T>,
    samples: &[T],
) -> Result<Residual> {
    let h = psi_times_t(s, f);
    let (tilde, direct) = match op {
        Operator::D => (apply_d_tilde(s, f), apply_d_t(s, &h)?),
        Operator::E => (apply_e_tilde(s, f), apply_e_t(s, &h)?),
    };
    let mut out = Residual::new(0.0, tilde.max_abs().max(direct.max_abs()));
    for u in samples {
        let t = T::one() - u.clone();
        let lhs = s.psi_at(u).mul_vec(&tilde.evaluate(&t));
        let rhs = direct.evaluate(&t);
        for (a, b) in lhs.iter().zip(&rhs) {
            out.abs = out.abs.max((a.clone() + b.clone()).magnitude());
            out.scale = out.scale.max(a.magnitude()).max(b.magnitude());
        }
    }
    Ok(out)
}
