//! Scalar abstraction shared by every generic construction in the crate.
//!
//! The algebraic constructions (structure matrices, matrix hypergeometric
//! series, eigenvectors of `M(λ)`, three-term blocks) only need field
//! arithmetic, so they are written once against [`Scalar`] and run in
//! `f64`, `f32`, or exactly in [`Rational`].

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Field element usable by the generic algorithms.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + NumAssign + Signed + Send + Sync + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Smallest relative tolerance this type can honour. Requested tolerances
    /// are clamped to it; exact types always compare against zero.
    const PRECISION_FLOOR: f64;

    fn from_i64(x: i64) -> Self;

    /// Conversion from a double. Exact types represent the binary value exactly.
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn from_usize(x: usize) -> Self {
        Self::from_i64(x as i64)
    }

    /// `|x|` as a double, used for pivoting and tolerance checks.
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Effective tolerance for a requested relative tolerance.
    fn tol(requested: f64) -> f64 {
        if Self::EXACT {
            0.0
        } else {
            requested.max(Self::PRECISION_FLOOR)
        }
    }

    /// `|self| <= tol * scale`, with exact types testing for zero.
    fn negligible(&self, tol: f64, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= Self::tol(tol) * scale
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const PRECISION_FLOOR: f64 = 0.0;

    fn from_i64(x: i64) -> Self {
        x as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    const PRECISION_FLOOR: f64 = 1e-4;

    fn from_i64(x: i64) -> Self {
        x as f32
    }
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const PRECISION_FLOOR: f64 = 0.0;

    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn from_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x).expect("finite value")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_from_f64_is_exact() {
        let half = <Rational as Scalar>::from_f64(0.5);
        assert_eq!(half, BigRational::new(1.into(), 2.into()));
        assert_eq!(Scalar::to_f64(&half), 0.5);
    }

    #[test]
    fn tolerance_clamping() {
        assert_eq!(f64::tol(1e-12), 1e-12);
        assert_eq!(f32::tol(1e-12), 1e-4);
        assert_eq!(Rational::tol(1e-3), 0.0);
        assert!(!<Rational as Scalar>::from_f64(1e-30).negligible(1.0, 1.0));
        assert!(1e-13f64.negligible(1e-12, 1.0));
    }
}
