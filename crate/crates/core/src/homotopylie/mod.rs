//! Degree 2 and 3 components of the homotopy Lie algebra of a Koszul
//! algebra, read off inside the quadratic dual, and the degree-2 center
//! test for embedded deformations.

mod obstruction;
mod pi;

pub use obstruction::{obstruction, FactorReport, ObstructionReport, ObstructionVerdict};
pub use pi::{bracket_with_generator, central_pi2, pi2, pi3, Center, HomotopyLie, LieOptions, PiComponent, PiLabel};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::homology::HomologyError;
use crate::quaddual::QuadDualError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("homotopy Lie components are not supported in characteristic 2")]
    Characteristic2,
    #[error("Betti numbers of k disagree with the dual's components at degree {degree}; the algebra is not Koszul")]
    NotKoszul { degree: usize },
    #[error("PBW count failure in degree {degree}: expected {expected}, found {found}")]
    PbwFailure { degree: usize, expected: i64, found: i64 },
    #[error(transparent)]
    QuadDual(#[from] QuadDualError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
