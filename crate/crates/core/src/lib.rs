//! Matrix-valued orthogonal polynomials built from the one-step spherical
//! functions of `(SU(n+1), U(n))`.
//!
//! The generic constructions run over any [`Scalar`]: `f64`, `f32` or the
//! exact [`Rational`]. Quadrature, spectra and the random walk are `f64` only.

pub mod error;
pub mod family;
pub mod hypergeom;
pub mod linalg;
pub mod operators;
pub mod orthogonality;
pub mod params;
pub mod quadrature;
pub mod recurrence;
pub mod residual;
pub mod scalar;
pub mod spectral;
pub mod structure;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use residual::Residual;
pub use params::{spectrum_injectivity_check, Mode, Params, SpectralPair};
pub use scalar::{Rational, Scalar};
pub use structure::StructureSet;

pub type StructureSetF64 = StructureSet<f64>;
pub type StructureSetF32 = StructureSet<f32>;
pub type StructureSetExact = StructureSet<Rational>;
pub type EigenFunctionF64 = family::EigenFunction<f64>;
pub type EigenFunctionExact = family::EigenFunction<Rational>;
pub type MatrixF64 = linalg::Matrix<f64>;
pub type MatrixExact = linalg::Matrix<Rational>;
pub type VecPolyF64 = linalg::VecPoly<f64>;
pub type VecPolyExact = linalg::VecPoly<Rational>;
pub type RecursionBlocksF64 = recurrence::RecursionBlocks<f64>;
