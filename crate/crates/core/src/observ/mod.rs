//! The algebra of observables `O^A(M)`, the maps `eta` and `pi`, and instance verifiers for
//! Burnside's Theorem, the Generalized Burnside Theorem and the closure property.

mod observables;
mod verify;

pub use observables::{build_observables, gr_eta, pi_check, GradedEta, ObservableBasis, ObservablesAlgebra};
pub use verify::{
    closure_check, is_simple_family, observables_at, verify_burnside, verify_gbt, BurnsideReport, ClosureReport,
    ClosureStep, GbtReport, Verdict,
};
