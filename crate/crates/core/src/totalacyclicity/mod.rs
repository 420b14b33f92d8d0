//! Doubly infinite complexes of free modules, given as finite windows or
//! periodic data, with checks for minimality, acyclicity, total acyclicity
//! and total reflexivity.

mod basechange;
mod complex;
mod reflexive;

pub use basechange::{base_change, BaseChange};
pub use complex::{
    Acyclicity, ComplexCheck, FreeComplex, Period, PositionHomology, Syzygy, TotalAcyclicity, TotalVerdict,
};
pub use reflexive::{
    totally_reflexive_certified, totally_reflexive_check, ConditionReport, ReflexiveReport, VerdictScope,
};

use thiserror::Error;

use crate::homology::HomologyError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("source of the differential at position {position} does not match the target of the next one")]
    ModuleMismatch { position: i32 },
    #[error("period {period} needs at least that many maps (window has {maps})")]
    BadPeriod { period: usize, maps: usize },
    #[error("periodic seam mismatch at position {position}")]
    SeamMismatch { position: i32 },
    #[error("position {0} lies outside the complex window")]
    OutOfRange(i32),
    #[error("composite of differentials at position {position} is nonzero")]
    NotAComplex { position: i32 },
    #[error("complex is not exact at position {position}")]
    NotAcyclic { position: i32 },
    #[error("target algebra does not extend the source algebra: {0}")]
    SpecMismatch(&'static str),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
