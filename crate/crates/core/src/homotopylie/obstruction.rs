use std::fmt;

use crate::algebra::GradedAlgebra;
use crate::scalars::Field;

use super::{HomotopyError, HomotopyLie, LieOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// No nonzero central element of degree 2, so no embedded deformation.
    Obstructed,
    /// A nonzero central element exists; this does not prove a deformation
    /// exists.
    Unobstructed,
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionVerdict::Obstructed => "obstructed: no embedded deformation",
            ObstructionVerdict::Unobstructed => "unobstructed at this test",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub betti: Vec<usize>,
    pub dual_dims: Vec<usize>,
    pub deviations: [i64; 3],
    pub pi2_dim: usize,
    pub pi3_dim: usize,
    pub center_dim: usize,
    /// `(dim U_3, C(ε_1,3) + ε_1 ε_2 + ε_3)`.
    pub pbw_degree3: (i64, i64),
    pub characteristic_three: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub factors: Vec<FactorReport>,
    /// Degree-2 center of the tensor product: the sum over the factors.
    pub center_dim: usize,
    pub verdict: ObstructionVerdict,
}

/// Degree-2 center test on one algebra, or on the tensor product of several
/// given as factors (its homotopy Lie algebra is the product of theirs).
pub fn obstruction<F: Field>(
    factors: &[&GradedAlgebra<F>],
    opts: LieOptions,
) -> Result<ObstructionReport, HomotopyError> {
    let mut reports = Vec::with_capacity(factors.len());
    for alg in factors {
        let lie = HomotopyLie::compute(alg, opts)?;
        let center = lie.center()?;
        reports.push(FactorReport {
            betti: lie.betti().to_vec(),
            dual_dims: lie.envelope.dims(),
            deviations: lie.deviations,
            pi2_dim: lie.pi2.dim(),
            pi3_dim: lie.pi3.dim(),
            center_dim: center.dim(),
            pbw_degree3: lie.pbw_degree3(),
            characteristic_three: lie.characteristic_three,
        });
    }
    let center_dim = reports.iter().map(|r| r.center_dim).sum();
    Ok(ObstructionReport {
        factors: reports,
        center_dim,
        verdict: if center_dim == 0 {
            ObstructionVerdict::Obstructed
        } else {
            ObstructionVerdict::Unobstructed
        },
    })
}
