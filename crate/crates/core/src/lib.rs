//! Generator descriptions of polyhedral cones over the rationals.
//!
//! Given a system of linear homogeneous inequalities `l_j(x) <= 0` with
//! rational coefficients, the solver computes a basis `U` of the lineality
//! space and the set `V` of extreme rays of the strongly convex part, so that
//! every solution is a linear combination of `U` plus a conical combination
//! of `V`. All arithmetic is exact.

pub mod bench;
pub mod error;
pub mod exact;
pub mod io;
pub mod mb;
pub mod random;
pub mod reduce;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{InequalitySystem, LinearForm, QVector, Rational};
pub use mb::{AdjacencyTest, ConeDescription};
pub use solver::{conehull, solve_direct};
