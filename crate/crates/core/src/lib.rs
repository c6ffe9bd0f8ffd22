//! Exact computations in the Motzkin diagram algebras M_n(D).

pub mod algebra;
pub mod bimodules;
pub mod cli;
pub mod error;
pub mod idempotents;
pub mod linalg;
pub mod scalars;
pub mod tangles;
pub mod towers;

pub use error::{Error, Result};
