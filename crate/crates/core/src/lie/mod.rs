pub mod free;
pub mod graded;

pub use free::{BracketWord, DglHomology, DglReport, FreeDgl, FreeLie};
pub use graded::{GradedLieAlgebra, LieElement, Length};
