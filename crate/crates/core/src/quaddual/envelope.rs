use crate::algebra::GradedAlgebra;
use crate::homology::{minimal_resolution, Presentation};
use crate::scalars::{Field, SparseEchelon};

use super::dual::{format_nc, word_letters, QuadraticDual};
use super::QuadDualError;

/// Components above this degree are refused; the word space has `n^d`
/// coordinates.
pub const NC_DEGREE_CAP: usize = 4;

/// `U_d = T^d / I_d` for a quadratic two-sided ideal `I`.
///
/// Words are numbered base `n` (so increasing number is lexicographic with
/// `T1 < ... < Tn`). The ideal is echelonized with larger words in earlier
/// columns, so the surviving words form the normal-word basis.
#[derive(Debug, Clone)]
pub struct NcComponent<F: Field> {
    degree: usize,
    nvars: usize,
    ideal: SparseEchelon<F>,
    /// Normal words, increasing.
    basis: Vec<usize>,
}

impl<F: Field> NcComponent<F> {
    fn build(field: &F, n: usize, d: usize, relations: &[Vec<(usize, F::Elem)>]) -> Self {
        let size = n.pow(d as u32);
        let col = |w: usize| size - 1 - w;
        let mut ideal = SparseEchelon::new(field, size);
        if d >= 2 {
            for a in 0..=d - 2 {
                let b = d - 2 - a;
                let (left, right) = (n.pow(a as u32), n.pow(b as u32));
                let shift = n * n * right;
                for l in 0..left {
                    for phi in relations {
                        for r in 0..right {
                            let row = phi.iter().map(|(t, c)| (col(l * shift + t * right + r), c.clone()));
                            ideal.insert(row);
                        }
                    }
                }
            }
        }
        let mut basis: Vec<usize> = ideal.free_columns().into_iter().map(col).collect();
        basis.sort_unstable();
        NcComponent {
            degree: d,
            nvars: n,
            ideal,
            basis,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the degree-`d` slice of the ideal.
    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }

    /// Normal words, as word numbers in increasing order.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_letters(&self) -> Vec<Vec<usize>> {
        self.basis
            .iter()
            .map(|&w| word_letters(self.nvars, self.degree, w))
            .collect()
    }

    /// Coordinates in the normal-word basis of a combination of words.
    pub fn reduce(&self, v: impl IntoIterator<Item = (usize, F::Elem)>, field: &F) -> Vec<F::Elem> {
        let size = self.nvars.pow(self.degree as u32);
        let rest = self.ideal.reduce(v.into_iter().map(|(w, c)| (size - 1 - w, c)));
        let mut out = vec![field.zero(); self.dim()];
        for (c, x) in rest {
            let w = size - 1 - c;
            let i = self
                .basis
                .binary_search(&w)
                .expect("reduced vectors live on normal words");
            out[i] = x;
        }
        out
    }

    /// Coordinates over all words of an element given in the normal-word basis.
    pub fn lift(&self, u: &[F::Elem], field: &F) -> Vec<(usize, F::Elem)> {
        self.basis
            .iter()
            .zip(u)
            .filter(|(_, x)| !field.is_zero(x))
            .map(|(&w, x)| (w, x.clone()))
            .collect()
    }
}

/// Components `U_0 .. U_max` of a quadratic algebra `T(V)/(R)`.
#[derive(Debug, Clone)]
pub struct NcEnvelope<F: Field> {
    field: F,
    nvars: usize,
    names: Vec<String>,
    components: Vec<NcComponent<F>>,
}

impl<F: Field> NcEnvelope<F> {
    /// `relations` are vectors over the `n^2` degree-2 words.
    pub fn new(field: &F, nvars: usize, relations: &[Vec<F::Elem>], max_degree: usize) -> Result<Self, QuadDualError> {
        if max_degree > NC_DEGREE_CAP {
            return Err(QuadDualError::DegreeCap {
                requested: max_degree,
                cap: NC_DEGREE_CAP,
            });
        }
        let sparse: Vec<Vec<(usize, F::Elem)>> = relations
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !field.is_zero(x))
                    .map(|(w, x)| (w, x.clone()))
                    .collect()
            })
            .collect();
        if sparse.iter().flatten().any(|(w, _)| *w >= nvars * nvars) {
            return Err(QuadDualError::DimensionMismatch);
        }
        let components = (0..=max_degree)
            .map(|d| NcComponent::build(field, nvars, d, &sparse))
            .collect();
        Ok(NcEnvelope {
            field: field.clone(),
            nvars,
            names: (1..=nvars).map(|i| format!("T{i}")).collect(),
            components,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, d: usize) -> Result<&NcComponent<F>, QuadDualError> {
        self.components.get(d).ok_or(QuadDualError::DegreeCap {
            requested: d,
            cap: self.max_degree(),
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(NcComponent::dim).collect()
    }

    /// `T_j` in `U_1`.
    pub fn generator(&self, j: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.nvars];
        v[j] = self.field.one();
        v
    }

    /// Product of `u ∈ U_a` and `v ∈ U_b` in `U_{a+b}`.
    pub fn mul(&self, a: usize, u: &[F::Elem], b: usize, v: &[F::Elem]) -> Result<Vec<F::Elem>, QuadDualError> {
        let f = &self.field;
        let target = self.component(a + b)?;
        let lu = self.component(a)?.lift(u, f);
        let lv = self.component(b)?.lift(v, f);
        let scale = self.nvars.pow(b as u32);
        let terms = lu
            .iter()
            .flat_map(|(w1, x)| lv.iter().map(move |(w2, y)| (w1 * scale + w2, f.mul(x, y))));
        Ok(target.reduce(terms.collect::<Vec<_>>(), f))
    }

    /// Renders an element of `U_d` over its normal words.
    pub fn format(&self, d: usize, u: &[F::Elem]) -> Result<String, QuadDualError> {
        let c = self.component(d)?;
        let size = self.nvars.pow(d as u32);
        let mut full = vec![self.field.zero(); size];
        for (w, x) in c.lift(u, &self.field) {
            full[w] = x;
        }
        Ok(format_nc(&self.field, &self.names, d, &full))
    }
}

/// Comparison of the Betti numbers of `k` with the dual's component
/// dimensions. Agreement is what a Koszul algebra must show.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulSmoke {
    pub betti: Vec<usize>,
    pub dual_dims: Vec<usize>,
    /// The resolution of `k` computed so far is linear.
    pub linear: bool,
    pub first_mismatch: Option<usize>,
}

impl KoszulSmoke {
    pub fn consistent(&self) -> bool {
        self.linear && self.first_mismatch.is_none()
    }
}

pub fn compare_dims(betti: &[usize], dual_dims: &[usize], linear: bool) -> KoszulSmoke {
    let first_mismatch = betti.iter().zip(dual_dims).position(|(b, u)| b != u);
    KoszulSmoke {
        betti: betti.to_vec(),
        dual_dims: dual_dims.to_vec(),
        linear,
        first_mismatch,
    }
}

/// Resolves `k` through `F_{i_max}` and compares with `dim U_0..U_{i_max}`.
pub fn koszul_smoke<F: Field>(
    alg: &GradedAlgebra<F>,
    dual: &QuadraticDual<F>,
    i_max: usize,
    int_cap: i32,
) -> Result<KoszulSmoke, QuadDualError> {
    if i_max > NC_DEGREE_CAP {
        return Err(QuadDualError::DegreeCap {
            requested: i_max,
            cap: NC_DEGREE_CAP,
        });
    }
    let res = minimal_resolution(alg, &Presentation::residue_field(alg), i_max, int_cap)?;
    let env = dual.envelope(i_max)?;
    Ok(compare_dims(&res.betti(), &env.dims(), res.is_linear()))
}
