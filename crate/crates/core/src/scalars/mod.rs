//! Exact fields and dense and sparse linear algebra over them.

mod echelon;
mod field;
mod matrix;
pub mod par;
mod sparse;

pub use echelon::EchelonBasis;
pub use field::{is_prime, rational_of, Field, FieldDesc, PrimeField, RationalField, Scalar, DEFAULT_PRIME};
pub use matrix::{Matrix, Rref};
pub(crate) use par::map_range;
pub use par::{parallelism, set_parallelism, Parallelism};
pub use sparse::{SparseEchelon, SparseRow};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldDesc, found: FieldDesc },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("denominator of {value} vanishes modulo {modulus}")]
    DenominatorVanishes { value: String, modulus: u32 },
}
