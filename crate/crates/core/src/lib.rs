//! Exact computations for finite-dimensional algebras and families of modules: Ext groups,
//! noncommutative formal moduli, algebras of observables, and verifiers for the Burnside-type
//! theorems on concrete instances.

pub mod algebra;
pub mod cli;
pub mod defth;
pub mod doc;
pub mod error;
pub mod exactla;
pub mod homolog;
pub mod observ;
pub mod posetalg;
pub mod repmod;

pub use error::{Error, Result};
