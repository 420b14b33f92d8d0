use thiserror::Error;

use tacalc_core::algebra::AlgebraError;
use tacalc_core::homology::HomologyError;
use tacalc_core::homotopylie::HomotopyError;
use tacalc_core::pfaffcomplex::PfaffError;
use tacalc_core::quaddual::QuadDualError;
use tacalc_core::scalars::ScalarError;
use tacalc_core::totalacyclicity::ComplexError;

use crate::files::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_CROSS_CHECK: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(ParseError),
    /// Input is well formed but outside what the computation supports.
    #[error("{0}")]
    Unsupported(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Parse(_) | CliError::Unsupported(_) => EXIT_USAGE,
            CliError::Cap(_) => EXIT_CAP,
            CliError::CrossCheck(_) => EXIT_CROSS_CHECK,
        }
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Unsupported(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NotFiniteDimensional { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            HomologyError::Internal(_) => CliError::CrossCheck(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<QuadDualError> for CliError {
    fn from(e: QuadDualError) -> Self {
        match e {
            QuadDualError::DegreeCap { .. } => CliError::Cap(e.to_string()),
            QuadDualError::Homology(h) => h.into(),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<HomotopyError> for CliError {
    fn from(e: HomotopyError) -> Self {
        match e {
            HomotopyError::NotKoszul { .. } | HomotopyError::PbwFailure { .. } => CliError::CrossCheck(e.to_string()),
            HomotopyError::QuadDual(q) => q.into(),
            HomotopyError::Homology(h) => h.into(),
            HomotopyError::Algebra(a) => a.into(),
            HomotopyError::Characteristic2 => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Homology(h) => h.into(),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<PfaffError> for CliError {
    fn from(e: PfaffError) -> Self {
        match e {
            PfaffError::TooLarge { .. } => CliError::Cap(e.to_string()),
            PfaffError::NotAComplex { .. } => CliError::CrossCheck(e.to_string()),
            PfaffError::Complex(c) => c.into(),
            PfaffError::Homology(h) => h.into(),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}
