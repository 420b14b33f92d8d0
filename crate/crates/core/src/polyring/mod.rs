//! Sparse multivariate polynomials over exact fields, and Pfaffians.

mod parse;
mod pfaffian;
mod poly;

pub use parse::parse_poly;
pub(crate) use parse::parse_terms;
pub use pfaffian::{generic_name, pfaffian, submax_pfaffians, SkewMatrix};
pub(crate) use poly::format_terms;
pub use poly::{Monomial, PolyContext, Polynomial};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable '{name}' at column {column}")]
    UnknownVariable { name: String, column: usize },
    #[error("malformed polynomial at column {column}: {message}")]
    Malformed { column: usize, message: String },
    #[error("non-integer exponent at column {column}")]
    BadExponent { column: usize },
    #[error("coefficient error: {0}")]
    Coefficient(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("polynomials live over different fields")]
    FieldMismatch,
    #[error("invalid variable name '{0}'")]
    BadVariableName(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("skew matrix diagonal is fixed at zero")]
    SkewDiagonal,
    #[error("submaximal Pfaffians need an odd size of at least 3, got {0}")]
    EvenPfaffianSize(usize),
}
