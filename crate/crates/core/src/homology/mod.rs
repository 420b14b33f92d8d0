//! Graded free modules over a [`GradedAlgebra`](crate::algebra::GradedAlgebra),
//! minimal resolutions, Betti numbers, deviations, duals and Ext.

mod dual;
mod kernel;
mod module;
mod resolution;

pub use dual::{ext, hom_dual, ExtGroup, HomDual};
pub use kernel::SubmoduleSpan;
pub(crate) use kernel::{kernel_dim, kernel_generators, minimal_subset};
pub use module::{Block, FreeModule, ModuleMap};
pub(crate) use resolution::binom;
pub use resolution::{
    deviations, minimal_resolution, series_product, Presentation, Resolution, DEFAULT_HOM_CAP, DEFAULT_INT_CAP,
};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("internal degree cap exceeded: a generator is needed in degree {degree} (cap {cap})")]
    CapExceeded { degree: i32, cap: i32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map entry ({row}, {col}) is not homogeneous of the required degree")]
    InhomogeneousEntry { row: usize, col: usize },
    #[error("non-homogeneous module presentation (relation {relation})")]
    InhomogeneousPresentation { relation: usize },
    #[error("maps are not composable")]
    NotComposable,
    #[error("deviations need b_0..b_3, got {0} Betti numbers")]
    TooFewBetti(usize),
    #[error("internal error: {0}")]
    Internal(&'static str),
}
