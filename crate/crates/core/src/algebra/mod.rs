pub mod cdga;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use cdga::{CohomologyGroup, DegreeBasis, FreeCdga};
pub use linalg::{Echelon, GradedLinearMap, Matrix, SparseVec};
pub use poly::{monomials_of_degree, normalize_monomial, GenId, Monomial, Polynomial};
pub use rational::{frac, fmt_rational, parse_rational, q, Q};
