use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::homology::{kernel_dim, kernel_generators, minimal_subset, FreeModule, ModuleMap, Presentation};
use crate::scalars::{map_range, parallelism, Field};

use super::ComplexError;

/// `C_{i+length} = C_i(-shift)` and `∂_{i+length} = ∂_i` as matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Period {
    pub length: usize,
    pub shift: i32,
}

/// A complex `(C_i, ∂_i)` of graded free modules. `maps[k]` is
/// `∂_{lo+k} : C_{lo+k} -> C_{lo+k-1}`. Without a period only the window is
/// known; with one, the window repeats in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeComplex<F: Field> {
    lo: i32,
    maps: Vec<ModuleMap<F>>,
    period: Option<Period>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCheck {
    pub is_complex: bool,
    pub is_minimal: bool,
    /// Positions `i` with `∂_i ∘ ∂_{i+1} ≠ 0`.
    pub nonzero_composites: Vec<i32>,
}

/// Homology dimensions at one position, by internal degree (zeros omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionHomology {
    pub position: i32,
    pub homology: BTreeMap<i32, usize>,
}

impl PositionHomology {
    pub fn total(&self) -> usize {
        self.homology.values().sum()
    }

    pub fn is_exact(&self) -> bool {
        self.homology.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Acyclicity {
    pub positions: Vec<PositionHomology>,
    /// Only the interior of a finite window was checked.
    pub window_only: bool,
}

impl Acyclicity {
    pub fn is_exact(&self) -> bool {
        self.positions.iter().all(PositionHomology::is_exact)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalVerdict {
    TotallyAcyclic,
    FailsComplex,
    FailsDual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalAcyclicity {
    pub verdict: TotalVerdict,
    pub complex: Acyclicity,
    pub dual: Acyclicity,
    pub minimal: bool,
    /// Minimal with some nonzero module.
    pub nontrivial: bool,
    pub window_only: bool,
}

/// `Ω^i C = ker ∂_i`, presented on minimal generators taken from the
/// columns of `∂_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Syzygy<F: Field> {
    pub position: i32,
    pub presentation: Presentation<F>,
    /// Generators of the syzygy as elements of `C_i`.
    pub embedding: ModuleMap<F>,
}

impl<F: Field> FreeComplex<F> {
    pub fn new(lo: i32, maps: Vec<ModuleMap<F>>, period: Option<usize>) -> Result<Self, ComplexError> {
        for (k, w) in maps.windows(2).enumerate() {
            if w[1].target() != w[0].source() {
                return Err(ComplexError::ModuleMismatch {
                    position: lo + k as i32,
                });
            }
        }
        let period = match period {
            None => None,
            Some(p) => {
                if p == 0 || p > maps.len() {
                    return Err(ComplexError::BadPeriod {
                        period: p,
                        maps: maps.len(),
                    });
                }
                let seam = lo + p as i32 - 1;
                let shift = infer_shift(maps[p - 1].source(), maps[0].target())
                    .ok_or(ComplexError::SeamMismatch { position: seam })?;
                for k in p..maps.len() {
                    if maps[k] != maps[k - p].shifted(shift) {
                        return Err(ComplexError::SeamMismatch {
                            position: lo + k as i32,
                        });
                    }
                }
                Some(Period { length: p, shift })
            }
        };
        Ok(FreeComplex { lo, maps, period })
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Index of the last differential in the window.
    pub fn hi(&self) -> i32 {
        self.lo + self.maps.len() as i32 - 1
    }

    pub fn maps(&self) -> &[ModuleMap<F>] {
        &self.maps
    }

    pub fn period(&self) -> Option<Period> {
        self.period
    }

    /// `∂_i`, unrolling the period if there is one.
    pub fn differential(&self, i: i32) -> Option<ModuleMap<F>> {
        let k = i - self.lo;
        match self.period {
            Some(Period { length, shift }) => {
                let p = length as i32;
                let m = &self.maps[k.rem_euclid(p) as usize];
                Some(m.shifted(k.div_euclid(p) * shift))
            }
            None => (k >= 0).then(|| self.maps.get(k as usize).cloned()).flatten(),
        }
    }

    pub fn module(&self, i: i32) -> Option<FreeModule> {
        self.differential(i)
            .map(|m| m.source().clone())
            .or_else(|| self.differential(i + 1).map(|m| m.target().clone()))
    }

    /// Positions where both adjacent differentials are known; for a periodic
    /// complex these represent every position.
    fn positions(&self) -> Vec<i32> {
        match self.period {
            Some(p) => (self.lo..self.lo + p.length as i32).collect(),
            None => (self.lo..self.hi()).collect(),
        }
    }

    pub fn check(&self, alg: &GradedAlgebra<F>) -> ComplexCheck {
        let positions = self.positions();
        let bad = map_range(positions.len(), parallelism(), |k| {
            let i = positions[k];
            let out = self.differential(i).expect("covered");
            let inn = self.differential(i + 1).expect("covered");
            let zero = out.compose(alg, &inn).map(|c| c.is_zero(alg)).unwrap_or(false);
            (!zero).then_some(i)
        });
        let nonzero_composites: Vec<i32> = bad.into_iter().flatten().collect();
        ComplexCheck {
            is_complex: nonzero_composites.is_empty(),
            is_minimal: self.maps.iter().all(|m| m.is_minimal(alg)),
            nonzero_composites,
        }
    }

    /// Homology at every checkable position and internal degree.
    pub fn acyclicity(&self, alg: &GradedAlgebra<F>) -> Result<Acyclicity, ComplexError> {
        let check = self.check(alg);
        if let Some(&position) = check.nonzero_composites.first() {
            return Err(ComplexError::NotAComplex { position });
        }
        let positions = self.positions();
        let found = map_range(positions.len(), parallelism(), |k| {
            let i = positions[k];
            let out = self.differential(i).expect("covered");
            let inn = self.differential(i + 1).expect("covered");
            PositionHomology {
                position: i,
                homology: homology_at(alg, &out, &inn),
            }
        });
        Ok(Acyclicity {
            positions: found,
            window_only: self.period.is_none(),
        })
    }

    /// `D_j = C_{-j}*` with `∂^D_j = (∂_{1-j})*`.
    pub fn dual(&self, alg: &GradedAlgebra<F>) -> FreeComplex<F> {
        let n = self.maps.len() as i32;
        let maps = self.maps.iter().rev().map(|m| m.dual(alg)).collect();
        FreeComplex::new(2 - self.lo - n, maps, self.period.map(|p| p.length)).expect("dual of a valid complex")
    }

    pub fn total_acyclicity(&self, alg: &GradedAlgebra<F>) -> Result<TotalAcyclicity, ComplexError> {
        let complex = self.acyclicity(alg)?;
        let dual = self.dual(alg).acyclicity(alg)?;
        let minimal = self.maps.iter().all(|m| m.is_minimal(alg));
        let nonzero = self.maps.iter().any(|m| !m.source().is_zero() || !m.target().is_zero());
        let verdict = if !complex.is_exact() {
            TotalVerdict::FailsComplex
        } else if !dual.is_exact() {
            TotalVerdict::FailsDual
        } else {
            TotalVerdict::TotallyAcyclic
        };
        Ok(TotalAcyclicity {
            verdict,
            window_only: complex.window_only,
            complex,
            dual,
            minimal,
            nontrivial: minimal && nonzero,
        })
    }

    /// `Ω^i C = ker ∂_i`, which equals the image of `∂_{i+1}` when `C` is
    /// exact at `i`.
    pub fn syzygy(&self, alg: &GradedAlgebra<F>, i: i32) -> Result<Syzygy<F>, ComplexError> {
        let out = self.differential(i).ok_or(ComplexError::OutOfRange(i))?;
        let inn = self.differential(i + 1).ok_or(ComplexError::OutOfRange(i))?;
        if !out.compose(alg, &inn)?.is_zero(alg) {
            return Err(ComplexError::NotAComplex { position: i });
        }
        if !homology_at(alg, &out, &inn).is_empty() {
            return Err(ComplexError::NotAcyclic { position: i });
        }
        let ci = out.source().clone();
        let candidates: Vec<(i32, Vec<F::Elem>)> = inn
            .source()
            .degrees()
            .iter()
            .copied()
            .zip(inn.columns().iter().cloned())
            .collect();
        let chosen = minimal_subset(alg, &ci, &candidates);
        let g0 = FreeModule::new(chosen.iter().map(|&j| candidates[j].0).collect());
        let cols: Vec<Vec<F::Elem>> = chosen.iter().map(|&j| candidates[j].1.clone()).collect();
        let embedding = ModuleMap::new(alg, g0.clone(), ci.clone(), cols)?;
        let rel = kernel_generators(alg, &g0, &ci, embedding.columns(), None, i32::MAX)?;
        let g1 = FreeModule::new(rel.iter().map(|(d, _)| *d).collect());
        let relations = ModuleMap::new(alg, g1, g0.clone(), rel.into_iter().map(|(_, v)| v).collect())?;
        Ok(Syzygy {
            position: i,
            presentation: Presentation {
                generators: g0,
                relations,
            },
            embedding,
        })
    }
}

/// Uniform `s` with `later = earlier(-s)`, if the ranks match.
fn infer_shift(later: &FreeModule, earlier: &FreeModule) -> Option<i32> {
    if later.rank() != earlier.rank() {
        return None;
    }
    let s = match (later.degrees().first(), earlier.degrees().first()) {
        (Some(a), Some(b)) => a - b,
        _ => 0,
    };
    (*later == earlier.shifted(s)).then_some(s)
}

/// `dim ker(out)_d - dim im(inn)_d` for each degree of the middle module.
fn homology_at<F: Field>(alg: &GradedAlgebra<F>, out: &ModuleMap<F>, inn: &ModuleMap<F>) -> BTreeMap<i32, usize> {
    let mut h = BTreeMap::new();
    if let Some((lo, hi)) = out.source().degree_range(alg) {
        for d in lo..=hi {
            let k = kernel_dim(alg, out.source(), out.target(), out.images_in_degree(alg, d), None, d);
            let r = inn.rank_in_degree(alg, d);
            if k > r {
                h.insert(d, k - r);
            }
        }
    }
    h
}
