//! Finite-dimensional standard-graded quotient algebras: construction,
//! normal forms, tensor products and socles.

mod graded;
mod spec;

pub use graded::{GradedAlgebra, Socle, SparseVec, DEFAULT_DEGREE_CAP};
pub use spec::AlgebraSpec;

use thiserror::Error;

use crate::scalars::FieldDesc;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("relation {index} is not homogeneous")]
    Inhomogeneous { index: usize },
    #[error("relation {index} has degree {degree}; relations must have degree at least 2")]
    LowDegree { index: usize, degree: u32 },
    #[error("not finite-dimensional within cap: degree {degree} still has dimension {dim}")]
    NotFiniteDimensional { degree: u32, dim: usize },
    #[error("degree cap must be at least 2, got {0}")]
    DegreeCapTooSmall(u32),
    #[error("variable name collision: '{0}'")]
    VariableCollision(String),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldDesc, right: FieldDesc },
    #[error("relation lives in a different variable context")]
    ContextMismatch,
    #[error("not a permutation of the variables")]
    BadPermutation,
    #[error("{0}")]
    Poly(String),
}
