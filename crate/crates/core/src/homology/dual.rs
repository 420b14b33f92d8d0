use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::scalars::Field;

use super::kernel::{kernel_dim, kernel_generators};
use super::module::{FreeModule, ModuleMap};
use super::resolution::{minimal_resolution, Presentation};
use super::HomologyError;

/// `M* = Hom(M, A)` with its presentation and the biduality map.
#[derive(Debug, Clone, PartialEq)]
pub struct HomDual<F: Field> {
    /// Presentation of `M*` on its minimal generators.
    pub dual: Presentation<F>,
    /// The generators of `M*` as vectors of `F_0*`.
    pub embedding: ModuleMap<F>,
    /// `F_0 -> G_0*`, inducing `M -> M**`.
    pub biduality: ModuleMap<F>,
    pub module_dims: BTreeMap<i32, usize>,
    pub bidual_dims: BTreeMap<i32, usize>,
    pub biduality_ranks: BTreeMap<i32, usize>,
    pub is_iso: bool,
}

/// Computes `M*` as the kernel of the transposed presentation matrix and
/// `M**` likewise from a presentation of `M*`. The biduality map sends a
/// generator of `M` to evaluation at the generators of `M*`, i.e. it is the
/// transpose of the embedding `G_0 -> F_0*`.
pub fn hom_dual<F: Field>(alg: &GradedAlgebra<F>, pres: &Presentation<F>) -> Result<HomDual<F>, HomologyError> {
    let f0_dual = pres.generators.dual();
    let p_dual = pres.relations.dual(alg);
    let psi = kernel_generators(alg, &f0_dual, p_dual.target(), p_dual.columns(), None, i32::MAX)
        .map_err(|_| HomologyError::Internal("unbounded kernel"))?;
    let g0 = FreeModule::new(psi.iter().map(|(d, _)| *d).collect());
    let embedding = ModuleMap::new(
        alg,
        g0.clone(),
        f0_dual.clone(),
        psi.into_iter().map(|(_, v)| v).collect(),
    )?;
    let rel = kernel_generators(alg, &g0, &f0_dual, embedding.columns(), None, i32::MAX)
        .map_err(|_| HomologyError::Internal("unbounded kernel"))?;
    let g1 = FreeModule::new(rel.iter().map(|(d, _)| *d).collect());
    let q = ModuleMap::new(alg, g1, g0.clone(), rel.into_iter().map(|(_, v)| v).collect())?;
    let dual = Presentation {
        generators: g0.clone(),
        relations: q.clone(),
    };

    let biduality = embedding.dual(alg);
    let q_dual = q.dual(alg);
    let module_dims = pres.dims(alg);
    let g0_dual = g0.dual();
    let mut bidual_dims = BTreeMap::new();
    let mut biduality_ranks = BTreeMap::new();
    let mut degrees: Vec<i32> = module_dims.keys().copied().collect();
    if let Some((lo, hi)) = g0_dual.degree_range(alg) {
        degrees.extend(lo..=hi);
    }
    degrees.sort_unstable();
    degrees.dedup();
    let mut is_iso = true;
    for d in degrees {
        let bd = kernel_dim(alg, &g0_dual, q_dual.target(), q_dual.images_in_degree(alg, d), None, d);
        let r = biduality.rank_in_degree(alg, d);
        let md = module_dims.get(&d).copied().unwrap_or(0);
        if r != md || r != bd {
            is_iso = false;
        }
        bidual_dims.insert(d, bd);
        biduality_ranks.insert(d, r);
    }
    Ok(HomDual {
        dual,
        embedding,
        biduality,
        module_dims,
        bidual_dims,
        biduality_ranks,
        is_iso,
    })
}

/// `dim_k Ext^i(M, A)` in total and per internal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGroup {
    pub total: usize,
    pub by_degree: BTreeMap<i32, usize>,
}

/// `Ext^i(M, A)` for `i = 0..=i_max`, from a minimal resolution through
/// `F_{i_max+1}` and the dual complex `F_0* -> F_1* -> ...`.
pub fn ext<F: Field>(
    alg: &GradedAlgebra<F>,
    pres: &Presentation<F>,
    i_max: usize,
    int_cap: i32,
) -> Result<Vec<ExtGroup>, HomologyError> {
    let res = minimal_resolution(alg, pres, i_max + 1, int_cap)?;
    let duals: Vec<ModuleMap<F>> = res.maps.iter().map(|m| m.dual(alg)).collect();
    let mut out = Vec::with_capacity(i_max + 1);
    for i in 0..=i_max {
        let mut by_degree = BTreeMap::new();
        if let Some(fi) = res.modules.get(i) {
            let fd = fi.dual();
            if let Some((lo, hi)) = fd.degree_range(alg) {
                for d in lo..=hi {
                    let dim = fd.dim(alg, d);
                    // outgoing d^i = (∂_{i+1})*, incoming d^{i-1} = (∂_i)*
                    let out_rank = duals.get(i).map_or(0, |m| m.rank_in_degree(alg, d));
                    let in_rank = if i == 0 { 0 } else { duals[i - 1].rank_in_degree(alg, d) };
                    let h = dim - out_rank - in_rank;
                    if h > 0 {
                        by_degree.insert(d, h);
                    }
                }
            }
        }
        out.push(ExtGroup {
            total: by_degree.values().sum(),
            by_degree,
        });
    }
    Ok(out)
}
