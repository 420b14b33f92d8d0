use std::sync::Arc;

use crate::polyring::{PolyContext, Polynomial};
use crate::scalars::{Field, FieldDesc};

use super::AlgebraError;

/// Presentation `k[x_1..x_n] / (relations)` with every variable in degree 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSpec<F: Field> {
    field: F,
    ctx: Arc<PolyContext>,
    relations: Vec<Polynomial<F>>,
}

impl<F: Field> AlgebraSpec<F> {
    pub fn new(field: &F, ctx: &Arc<PolyContext>, relations: Vec<Polynomial<F>>) -> Result<Self, AlgebraError> {
        for (i, r) in relations.iter().enumerate() {
            if r.context() != ctx {
                return Err(AlgebraError::ContextMismatch);
            }
            if r.field() != field {
                return Err(AlgebraError::FieldMismatch {
                    left: field.desc(),
                    right: r.field().desc(),
                });
            }
            if !r.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous { index: i });
            }
            match r.degree() {
                Some(d) if d >= 2 => {}
                d => {
                    return Err(AlgebraError::LowDegree {
                        index: i,
                        degree: d.unwrap_or(0),
                    })
                }
            }
        }
        Ok(AlgebraSpec {
            field: field.clone(),
            ctx: ctx.clone(),
            relations,
        })
    }

    /// The field itself, as an algebra on no variables.
    pub fn ground(field: &F) -> Self {
        let ctx = PolyContext::new(Vec::<String>::new()).expect("empty context");
        AlgebraSpec {
            field: field.clone(),
            ctx,
            relations: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn desc(&self) -> FieldDesc {
        self.field.desc()
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn var_names(&self) -> &[String] {
        self.ctx.names()
    }

    pub fn relations(&self) -> &[Polynomial<F>] {
        &self.relations
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.degree() == Some(2))
    }

    /// Disjoint union of variables and relations; `self`'s variables first.
    pub fn tensor(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field.desc(),
                right: other.field.desc(),
            });
        }
        if let Some(name) = other.var_names().iter().find(|n| self.ctx.index_of(n).is_some()) {
            return Err(AlgebraError::VariableCollision(name.clone()));
        }
        let names = self.var_names().iter().chain(other.var_names()).cloned();
        let ctx = PolyContext::new(names).map_err(|e| AlgebraError::Poly(e.to_string()))?;
        let mut relations: Vec<_> = self.relations.iter().map(|r| r.embed(&ctx, 0)).collect();
        relations.extend(other.relations.iter().map(|r| r.embed(&ctx, self.nvars())));
        AlgebraSpec::new(&self.field, &ctx, relations)
    }

    /// Same variables with more relations appended.
    pub fn with_relations(&self, extra: Vec<Polynomial<F>>) -> Result<Self, AlgebraError> {
        let mut relations = self.relations.clone();
        relations.extend(extra);
        AlgebraSpec::new(&self.field, &self.ctx, relations)
    }

    /// Reorders variables: new variable `i` is old variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        let n = self.nvars();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(AlgebraError::BadPermutation);
        }
        let names: Vec<String> = perm.iter().map(|&p| self.var_names()[p].clone()).collect();
        let ctx = PolyContext::new(names).map_err(|e| AlgebraError::Poly(e.to_string()))?;
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let images: Vec<Polynomial<F>> = inverse.iter().map(|&i| Polynomial::var(&self.field, &ctx, i)).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| r.substitute(&images))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| AlgebraError::Poly(e.to_string()))?;
        AlgebraSpec::new(&self.field, &ctx, relations)
    }

    /// Reinterprets the presentation over another field, mapping each
    /// coefficient through its exact rational value.
    pub fn to_field<G: Field>(&self, target: &G) -> Result<AlgebraSpec<G>, AlgebraError> {
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let mut err = None;
            let mapped = r.map_coeffs(target, |c| {
                let s = self.field.to_scalar(c);
                let q = crate::scalars::rational_of(&s);
                target.from_rational(&q).unwrap_or_else(|e| {
                    err = Some(e);
                    target.zero()
                })
            });
            if let Some(e) = err {
                return Err(AlgebraError::Poly(e.to_string()));
            }
            relations.push(mapped);
        }
        AlgebraSpec::new(target, &self.ctx, relations)
    }
}
