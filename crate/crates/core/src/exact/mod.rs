//! Exact arithmetic: rationals, sparse multivariate polynomials and reduced
//! rational functions.

pub mod factored;
pub mod gcd;
pub mod monomial;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod var;

pub use factored::{Factored, LazySum};
pub use gcd::{gcd, lcm};
pub use monomial::Monomial;
pub use poly::{Degree, MultiPoly};
pub use ratfunc::{vandermonde, RatFunc};
pub use rational::{frac, rat, Rational};
pub use var::{VarFamily, VarId};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarId),
    #[error("division by the zero function")]
    DivisionByZeroFunction,
    #[error("a denominator vanishes at the evaluation point")]
    PoleAtPoint,
}
