use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::polyring::Polynomial;
use crate::scalars::{EchelonBasis, Field};

use super::kernel::{kernel_dim, kernel_generators, SubmoduleSpan};
use super::module::{FreeModule, ModuleMap};
use super::HomologyError;

pub const DEFAULT_HOM_CAP: usize = 4;
pub const DEFAULT_INT_CAP: i32 = 10;

/// A graded module given as the cokernel of `relations : F_1 -> F_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation<F: Field> {
    pub generators: FreeModule,
    pub relations: ModuleMap<F>,
}

impl<F: Field> Presentation<F> {
    /// The residue field `A / m`.
    pub fn residue_field(alg: &GradedAlgebra<F>) -> Self {
        let n = alg.nvars();
        let f = alg.field();
        let generators = FreeModule::new(vec![0]);
        let rel_src = FreeModule::new(vec![1; n]);
        let columns = (0..n)
            .map(|k| {
                let mut v = vec![f.zero(); n];
                v[k] = f.one();
                v
            })
            .collect();
        let relations = ModuleMap::new(alg, rel_src, generators.clone(), columns).expect("unit columns");
        Presentation { generators, relations }
    }

    /// A free module (no relations).
    pub fn free(alg: &GradedAlgebra<F>, degrees: Vec<i32>) -> Self {
        let generators = FreeModule::new(degrees);
        let relations = ModuleMap::zero(alg, FreeModule::zero(), generators.clone());
        Presentation { generators, relations }
    }

    /// Builds a presentation from relation columns of polynomials, one
    /// entry per generator. Each column must be homogeneous; columns that
    /// vanish in the algebra are dropped.
    pub fn from_polys(
        alg: &GradedAlgebra<F>,
        degrees: Vec<i32>,
        columns: &[Vec<Polynomial<F>>],
    ) -> Result<Self, HomologyError> {
        let generators = FreeModule::new(degrees);
        let mut rel_degrees = Vec::new();
        let mut kept: Vec<&Vec<Polynomial<F>>> = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            if col.len() != generators.rank() {
                return Err(HomologyError::DimensionMismatch {
                    expected: generators.rank(),
                    found: col.len(),
                });
            }
            let mut deg: Option<i32> = None;
            for (i, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous() {
                    return Err(HomologyError::InhomogeneousPresentation { relation: j });
                }
                let d = p.degree().expect("nonzero") as i32 + generators.degrees()[i];
                if deg.is_some_and(|e| e != d) {
                    return Err(HomologyError::InhomogeneousPresentation { relation: j });
                }
                deg = Some(d);
            }
            if let Some(d) = deg {
                rel_degrees.push(d);
                kept.push(col);
            }
        }
        let entries: Vec<Vec<Polynomial<F>>> = (0..generators.rank())
            .map(|i| kept.iter().map(|c| c[i].clone()).collect())
            .collect();
        let relations = ModuleMap::from_polys(alg, FreeModule::new(rel_degrees), generators.clone(), &entries)?;
        Ok(Presentation { generators, relations })
    }

    pub fn relation_vectors(&self) -> Vec<(i32, Vec<F::Elem>)> {
        self.relations
            .source()
            .degrees()
            .iter()
            .copied()
            .zip(self.relations.columns().iter().cloned())
            .collect()
    }

    pub fn relation_span(&self, alg: &GradedAlgebra<F>) -> SubmoduleSpan<F> {
        SubmoduleSpan::new(alg, &self.generators, &self.relation_vectors())
    }

    /// `dim_k M_d` for every degree where `M` can be nonzero.
    pub fn dims(&self, alg: &GradedAlgebra<F>) -> BTreeMap<i32, usize> {
        let span = self.relation_span(alg);
        let mut out = BTreeMap::new();
        if let Some((lo, hi)) = self.generators.degree_range(alg) {
            for d in lo..=hi {
                out.insert(d, self.generators.dim(alg, d) - span.dim(d));
            }
        }
        out
    }
}

/// Minimal graded free resolution `... -> F_2 -> F_1 -> F_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolution<F: Field> {
    pub modules: Vec<FreeModule>,
    /// `maps[i] : F_{i+1} -> F_i`
    pub maps: Vec<ModuleMap<F>>,
    /// The last kernel computed was zero, so the resolution is finite.
    pub complete: bool,
}

impl<F: Field> Resolution<F> {
    pub fn betti(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    /// `b_{i,j}`: number of degree-`j` generators of `F_i`.
    pub fn graded_betti(&self) -> Vec<BTreeMap<i32, usize>> {
        self.modules
            .iter()
            .map(|m| {
                let mut row = BTreeMap::new();
                for &g in m.degrees() {
                    *row.entry(g).or_insert(0) += 1;
                }
                row
            })
            .collect()
    }

    /// Truncated Poincaré series coefficients.
    pub fn poincare(&self) -> Vec<usize> {
        self.betti()
    }

    /// `b_{i,j} = 0` unless `j = i + shift` for the generator degree of `F_0`.
    pub fn is_linear(&self) -> bool {
        let Some(&g0) = self.modules.first().and_then(|m| m.degrees().iter().min()) else {
            return true;
        };
        self.modules
            .iter()
            .enumerate()
            .all(|(i, m)| m.degrees().iter().all(|&g| g == g0 + i as i32))
    }

    /// Composites of consecutive maps vanish.
    pub fn is_complex(&self, alg: &GradedAlgebra<F>) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(alg, &w[1]).map(|c| c.is_zero(alg)).unwrap_or(false))
    }

    pub fn is_minimal(&self, alg: &GradedAlgebra<F>) -> bool {
        self.maps.iter().all(|m| m.is_minimal(alg))
    }

    /// Exactness at `F_1 .. F_{len-2}` in every internal degree.
    pub fn is_exact(&self, alg: &GradedAlgebra<F>) -> bool {
        for i in 1..self.maps.len() {
            let out = &self.maps[i - 1];
            let inn = &self.maps[i];
            let Some((lo, hi)) = out.source().degree_range(alg) else {
                continue;
            };
            for d in lo..=hi {
                let k = kernel_dim(alg, out.source(), out.target(), out.images_in_degree(alg, d), None, d);
                if k != inn.rank_in_degree(alg, d) {
                    return false;
                }
            }
        }
        true
    }
}

/// Generators of `F_0` that survive modulo `m F_0 + K`, in order.
fn minimal_cover<F: Field>(alg: &GradedAlgebra<F>, pres: &Presentation<F>, span: &SubmoduleSpan<F>) -> Vec<usize> {
    let f = alg.field();
    let gens = &pres.generators;
    let mut keep = Vec::new();
    let mut degrees: Vec<i32> = gens.degrees().to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let blocks = gens.blocks(alg, d);
        let here: Vec<_> = blocks.iter().filter(|b| b.alg_degree == 0).collect();
        let mut ech = EchelonBasis::new(f, here.len());
        if let Some(k) = span.span(d) {
            for row in k.rows() {
                ech.insert(here.iter().map(|b| row[b.offset].clone()).collect());
            }
        }
        for (i, b) in here.iter().enumerate() {
            let mut v = vec![f.zero(); here.len()];
            v[i] = f.one();
            if ech.insert(v) {
                keep.push(b.generator);
            }
        }
    }
    keep.sort_unstable();
    keep
}

/// Minimal graded free resolution of a presented module through `F_hom_cap`.
pub fn minimal_resolution<F: Field>(
    alg: &GradedAlgebra<F>,
    pres: &Presentation<F>,
    hom_cap: usize,
    int_cap: i32,
) -> Result<Resolution<F>, HomologyError> {
    let span = pres.relation_span(alg);
    let keep = minimal_cover(alg, pres, &span);
    let f0 = FreeModule::new(keep.iter().map(|&j| pres.generators.degrees()[j]).collect());
    let inclusion: Vec<Vec<F::Elem>> = keep.iter().map(|&j| pres.generators.unit(alg, j)).collect();
    let mut modules = vec![f0.clone()];
    let mut maps: Vec<ModuleMap<F>> = Vec::new();
    if hom_cap == 0 {
        return Ok(Resolution {
            modules,
            maps,
            complete: false,
        });
    }
    let first = kernel_generators(alg, &f0, &pres.generators, &inclusion, Some(&span), int_cap)?;
    let mut current = push_step(alg, &mut modules, &mut maps, first)?;
    let mut complete = !current;
    while current && maps.len() < hom_cap {
        let last = maps.last().expect("at least one map");
        let next = kernel_generators(alg, last.source(), last.target(), last.columns(), None, int_cap)?;
        current = push_step(alg, &mut modules, &mut maps, next)?;
        complete = !current;
    }
    Ok(Resolution {
        modules,
        maps,
        complete,
    })
}

fn push_step<F: Field>(
    alg: &GradedAlgebra<F>,
    modules: &mut Vec<FreeModule>,
    maps: &mut Vec<ModuleMap<F>>,
    gens: Vec<(i32, Vec<F::Elem>)>,
) -> Result<bool, HomologyError> {
    if gens.is_empty() {
        return Ok(false);
    }
    let target = modules.last().expect("F_0 present").clone();
    let source = FreeModule::new(gens.iter().map(|(d, _)| *d).collect());
    let map = ModuleMap::new(alg, source.clone(), target, gens.into_iter().map(|(_, v)| v).collect())?;
    modules.push(source);
    maps.push(map);
    Ok(true)
}

/// `(ε_1, ε_2, ε_3)` from `b_0 .. b_3` of the residue field.
pub fn deviations(betti: &[usize]) -> Result<[i64; 3], HomologyError> {
    if betti.len() < 4 {
        return Err(HomologyError::TooFewBetti(betti.len()));
    }
    let b: Vec<i64> = betti.iter().map(|&x| x as i64).collect();
    let e1 = b[1];
    let e2 = b[2] - binom(e1, 2);
    let e3 = b[3] - e2 * e1 - binom(e1, 3);
    Ok([e1, e2, e3])
}

pub(crate) fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Product of two truncated power series, keeping `len` coefficients.
pub fn series_product(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    (0..len)
        .map(|n| {
            (0..=n)
                .map(|i| a.get(i).copied().unwrap_or(0) * b.get(n - i).copied().unwrap_or(0))
                .sum()
        })
        .collect()
}
