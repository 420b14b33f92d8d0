//! Quadratic duals of commutative quadratic algebras and the graded
//! components of the resulting noncommutative algebras.

mod dual;
mod envelope;

pub use dual::{
    coefficient_matrix, format_nc, format_word, pair_columns, parse_nc, quadratic_dual, word_letters, word_number,
    QuadraticDual,
};
pub use envelope::{compare_dims, koszul_smoke, KoszulSmoke, NcComponent, NcEnvelope, NC_DEGREE_CAP};

use thiserror::Error;

use crate::homology::HomologyError;
use crate::polyring::PolyError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QuadDualError {
    #[error("quadratic duals are not supported in characteristic 2")]
    Characteristic2,
    #[error("relation {index} has degree {degree}; only quadratic relations are supported")]
    NotQuadratic { index: usize, degree: usize },
    #[error("noncommutative degree {requested} exceeds the cap {cap}")]
    DegreeCap { requested: usize, cap: usize },
    #[error("noncommutative element is not homogeneous")]
    Inhomogeneous,
    #[error("relation vector has the wrong length")]
    DimensionMismatch,
    #[error(transparent)]
    Parse(#[from] PolyError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
