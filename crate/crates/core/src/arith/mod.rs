//! Exact arithmetic: Q[t], Q(t), Laurent polynomials and sparse linear algebra.

mod laurent;
pub mod modp;
mod poly;
mod ratfunc;
mod sparse;

use num_rational::BigRational;
use thiserror::Error;

pub use laurent::LaurentPoly;
pub use poly::{fmt_rational, UniPoly};
pub use ratfunc::RatFunc;
pub use sparse::{rref_rows, Rref, SparseMatrix, SparseVec};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at t = {0}")]
    Pole(BigRational),
    #[error("shape mismatch: {left:?} vs {right:?}")]
    Shape { left: (usize, usize), right: (usize, usize) },
}
