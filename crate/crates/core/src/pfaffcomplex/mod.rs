//! The generic grade-3 Pfaffian complex `0 → P → P^d → P^d → P → 0` of an
//! odd skew-symmetric matrix, its symbolic verification, and its
//! specializations into polynomial rings and graded quotient algebras.

mod be;

pub use be::{
    generic_be_complex, poly_matmul, specialize, specialize_polys, BeComplex, BeReport, PolyMatrix, SpecializedBe,
    MAX_BE_SIZE,
};

use thiserror::Error;

use crate::polyring::PolyError;
use crate::totalacyclicity::ComplexError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PfaffError {
    #[error("Pfaffian complexes need an odd size of at least 3, got {0}")]
    EvenSize(usize),
    #[error("size {size} exceeds the cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("expected {expected} images for the entries t_ij, got {found}")]
    AssignmentLength { expected: usize, found: usize },
    #[error("image of {name} is not homogeneous of the common degree")]
    Inhomogeneous { name: String },
    #[error("specialized maps do not compose to zero ({which})")]
    NotAComplex { which: &'static str },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
}
