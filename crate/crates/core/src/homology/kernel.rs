use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::scalars::{parallelism, EchelonBasis, Field, Matrix};

use super::module::{FreeModule, OrbitWalker};
use super::HomologyError;

/// A graded submodule of a free module, spanned degree by degree by the
/// orbits of its generators.
#[derive(Debug, Clone)]
pub struct SubmoduleSpan<F: Field> {
    pub(crate) spans: BTreeMap<i32, EchelonBasis<F>>,
}

impl<F: Field> SubmoduleSpan<F> {
    pub fn new(alg: &GradedAlgebra<F>, module: &FreeModule, generators: &[(i32, Vec<F::Elem>)]) -> Self {
        let f = alg.field();
        let mut spans = BTreeMap::new();
        if let Some((lo, hi)) = module.degree_range(alg) {
            let mut walkers: Vec<OrbitWalker<F::Elem>> = generators
                .iter()
                .map(|(d, v)| OrbitWalker::new(*d, v.clone()))
                .collect();
            for d in lo..=hi {
                let mut ech = EchelonBasis::new(f, module.dim(alg, d));
                for w in walkers.iter_mut() {
                    if d < w.base {
                        continue;
                    }
                    let e = (d - w.base) as usize;
                    let layer = w.at(alg, module, e).to_vec();
                    let target = ech.dim();
                    ech.extend(layer, Some(target));
                }
                spans.insert(d, ech);
            }
        }
        SubmoduleSpan { spans }
    }

    pub fn dim(&self, d: i32) -> usize {
        self.spans.get(&d).map_or(0, EchelonBasis::rank)
    }

    pub fn span(&self, d: i32) -> Option<&EchelonBasis<F>> {
        self.spans.get(&d)
    }
}

/// Minimal homogeneous generators of `ker(φ)` for `φ : source -> target/K`,
/// where `columns[j]` is the image of source generator `j` (a vector of the
/// target in degree `g_j`) and `K` is an optional submodule of the target.
///
/// Degrees are scanned upward; in each degree the images of generators
/// chosen so far are inserted first and the kernel basis is only computed if
/// they fall short. Generators needed above `int_cap` raise an error.
pub(crate) fn kernel_generators<F: Field>(
    alg: &GradedAlgebra<F>,
    source: &FreeModule,
    target: &FreeModule,
    columns: &[Vec<F::Elem>],
    quotient: Option<&SubmoduleSpan<F>>,
    int_cap: i32,
) -> Result<Vec<(i32, Vec<F::Elem>)>, HomologyError> {
    let f = alg.field();
    let mode = parallelism();
    let Some((lo, hi)) = source.degree_range(alg) else {
        return Ok(Vec::new());
    };
    let mut image_walkers: Vec<OrbitWalker<F::Elem>> = source
        .degrees()
        .iter()
        .zip(columns)
        .map(|(&g, c)| OrbitWalker::new(g, c.clone()))
        .collect();
    let mut found: Vec<(i32, Vec<F::Elem>)> = Vec::new();
    let mut kernel_walkers: Vec<OrbitWalker<F::Elem>> = Vec::new();
    for d in lo..=hi {
        let sd = source.dim(alg, d);
        let td = target.dim(alg, d);
        let mut images: Vec<Vec<F::Elem>> = Vec::with_capacity(sd);
        for w in image_walkers.iter_mut() {
            if d < w.base {
                continue;
            }
            let e = (d - w.base) as usize;
            images.extend_from_slice(w.at(alg, target, e));
        }
        debug_assert_eq!(images.len(), sd);
        if sd == 0 {
            continue;
        }
        let k_rows: Vec<Vec<F::Elem>> = quotient
            .and_then(|q| q.span(d))
            .map(|e| e.rows().to_vec())
            .unwrap_or_default();
        let mut ech = EchelonBasis::new(f, td);
        ech.extend_with(k_rows.clone(), None, mode);
        let base = ech.rank();
        ech.extend_with(images.clone(), Some(td), mode);
        let kdim = sd - (ech.rank() - base);
        if kdim == 0 {
            continue;
        }
        let mut ker = EchelonBasis::new(f, sd);
        for w in kernel_walkers.iter_mut() {
            if ker.rank() >= kdim {
                break;
            }
            let e = (d - w.base) as usize;
            let layer = w.at(alg, source, e).to_vec();
            ker.extend_with(layer, Some(kdim), mode);
        }
        if ker.rank() == kdim {
            continue;
        }
        let mut cols = images;
        cols.extend(k_rows);
        let null = Matrix::from_columns(f, td, &cols).rref_with(mode).nullspace_basis();
        for mut v in null {
            if ker.rank() >= kdim {
                break;
            }
            v.truncate(sd);
            normalize(f, &mut v);
            if ker.insert(v.clone()) {
                if d > int_cap {
                    return Err(HomologyError::CapExceeded {
                        degree: d,
                        cap: int_cap,
                    });
                }
                kernel_walkers.push(OrbitWalker::new(d, v.clone()));
                found.push((d, v));
            }
        }
        debug_assert_eq!(ker.rank(), kdim);
    }
    Ok(found)
}

/// Scales so the first nonzero coordinate is 1.
pub(crate) fn normalize<F: Field>(f: &F, v: &mut [F::Elem]) {
    if let Some(p) = v.iter().position(|x| !f.is_zero(x)) {
        if !f.is_one(&v[p]) {
            let inv = f.inv(&v[p]);
            f.scale_assign(v, &inv);
        }
    }
}

/// Dimension of `ker(φ_d)` for `φ : source -> target/K` in one degree.
pub(crate) fn kernel_dim<F: Field>(
    alg: &GradedAlgebra<F>,
    source: &FreeModule,
    target: &FreeModule,
    images: Vec<Vec<F::Elem>>,
    quotient: Option<&EchelonBasis<F>>,
    d: i32,
) -> usize {
    let sd = source.dim(alg, d);
    let td = target.dim(alg, d);
    let mut ech = match quotient {
        Some(q) => q.clone(),
        None => EchelonBasis::new(alg.field(), td),
    };
    let base = ech.rank();
    ech.extend(images, Some(td));
    sd - (ech.rank() - base)
}

/// Chooses, degree by degree, a minimal subset of `generators` spanning the
/// same submodule. Returns the chosen indices in input order.
pub(crate) fn minimal_subset<F: Field>(
    alg: &GradedAlgebra<F>,
    module: &FreeModule,
    generators: &[(i32, Vec<F::Elem>)],
) -> Vec<usize> {
    let f = alg.field();
    let mut chosen: Vec<usize> = Vec::new();
    let Some((lo, hi)) = module.degree_range(alg) else {
        return chosen;
    };
    let mut walkers: Vec<OrbitWalker<F::Elem>> = Vec::new();
    for d in lo..=hi {
        let md = module.dim(alg, d);
        let mut ech = EchelonBasis::new(f, md);
        for w in walkers.iter_mut() {
            let e = (d - w.base) as usize;
            let layer = w.at(alg, module, e).to_vec();
            ech.extend(layer, Some(md));
        }
        for (i, (g, v)) in generators.iter().enumerate() {
            if *g == d && ech.insert(v.clone()) {
                chosen.push(i);
                walkers.push(OrbitWalker::new(d, v.clone()));
            }
        }
    }
    chosen.sort_unstable();
    chosen
}
