//! Exact scalars and sparse multivariate polynomials.

mod expr;
pub mod linalg;
mod poly;
mod rat;

use thiserror::Error;

pub use expr::{parse_poly, ExprError};
pub use poly::{poly_arith, vars, ArithOp, Monomial, MultiPoly, Vars};
pub use rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VarMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value assigned to `{0}`")]
    MissingAssignment(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    BadRational(String),
}
