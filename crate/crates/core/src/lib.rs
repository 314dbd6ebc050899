//! Rational models of mapping spaces between nilpotent spaces.

pub mod algebra;
pub mod chains;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod lie;
pub mod mapping;
pub mod random;

pub use algebra::*;
pub use error::{Error, Result};
pub use lie::*;
