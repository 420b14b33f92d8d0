use crate::algebra::GradedAlgebra;
use crate::homology::ModuleMap;
use crate::polyring::Polynomial;
use crate::scalars::Field;

use super::{ComplexError, FreeComplex};

#[derive(Debug, Clone, PartialEq)]
pub struct BaseChange<F: Field> {
    pub complex: FreeComplex<F>,
    /// The target is the source tensored with an algebra in new variables,
    /// hence free over it.
    pub flat_certified: bool,
}

/// `C ⊗_Q R` along `Q -> R`, where `R` is presented on `Q`'s variables
/// (possibly followed by new ones) with `Q`'s relations first and extra
/// relations after. Entries are reduced to normal form in `R`; no verdict
/// is carried over.
pub fn base_change<F: Field>(
    source: &GradedAlgebra<F>,
    complex: &FreeComplex<F>,
    target: &GradedAlgebra<F>,
) -> Result<BaseChange<F>, ComplexError> {
    let (qs, rs) = (source.spec(), target.spec());
    if qs.field() != rs.field() {
        return Err(ComplexError::SpecMismatch("fields differ"));
    }
    let n = qs.nvars();
    if rs.nvars() < n || rs.var_names()[..n] != *qs.var_names() {
        return Err(ComplexError::SpecMismatch("variables are not a prefix"));
    }
    let ctx = rs.context();
    let qrels = qs.relations();
    if rs.relations().len() < qrels.len() || qrels.iter().zip(rs.relations()).any(|(q, r)| q.embed(ctx, 0) != *r) {
        return Err(ComplexError::SpecMismatch("relations are not a prefix"));
    }
    let flat_certified = rs.relations()[qrels.len()..]
        .iter()
        .all(|p| p.terms().all(|(m, _)| m.0[..n].iter().all(|&e| e == 0)));

    let mut maps = Vec::with_capacity(complex.maps().len());
    for m in complex.maps() {
        let entries: Vec<Vec<Polynomial<F>>> = (0..m.target().rank())
            .map(|i| {
                (0..m.source().rank())
                    .map(|j| m.entry_poly(source, i, j).embed(ctx, 0))
                    .collect()
            })
            .collect();
        maps.push(ModuleMap::from_polys(
            target,
            m.source().clone(),
            m.target().clone(),
            &entries,
        )?);
    }
    let complex = FreeComplex::new(complex.lo(), maps, complex.period().map(|p| p.length))?;
    Ok(BaseChange {
        complex,
        flat_certified,
    })
}
