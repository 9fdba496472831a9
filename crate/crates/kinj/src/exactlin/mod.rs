//! Exact dense linear algebra over the rationals or a prime field.
//!
//! Everything downstream (representation decompositions, chain-map solving,
//! stable hom dimensions) reduces to `rref`, `kernel_basis`, and `solve`
//! here. Pivoting is deterministic (first nonzero entry, scanning left to
//! right and top to bottom) so repeated runs produce identical output.

mod matrix;
mod scalar;

pub use matrix::{LinError, Matrix, Rref};
pub use scalar::{Field, FieldError, Scalar};
