//! Exact symbolic engine for tautological cycle identities on powers of a
//! curve and on its Jacobian: modified diagonals, projector calculus,
//! Pontryagin-word expansions, a genus-3 tautological-ring reduction, and
//! the integral torsion bookkeeping that ties them together. All arithmetic
//! is exact; every verified identity is an equality of canonical forms.

pub mod cycle;
pub mod dsl;
pub mod error;
pub mod genus3;
pub mod inference;
pub mod jacobian;
pub mod numtheory;
pub mod ops;
pub mod poly;
pub mod suites;

pub use error::{CycError, Result};
