//! Dense matrices and polynomial containers sized for `(ℓ+1) × (ℓ+1)` problems.

pub mod eigen;
mod matrix;
mod poly;

pub use eigen::{eigenvalues, symmetric_eigenvalues};
pub use matrix::{Matrix, SINGULAR_TOL};
pub use poly::{MatPoly, VecPoly, TRIM_TOL};
