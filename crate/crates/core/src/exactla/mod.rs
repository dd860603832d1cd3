//! Exact linear algebra over the rationals and prime fields.

mod matrix;
pub mod poly;
mod scalar;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use scalar::{Field, Scalar};
pub use subspace::{quotient_basis, Quotient, RowReducer, Subspace};
