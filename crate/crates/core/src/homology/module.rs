use crate::algebra::GradedAlgebra;
use crate::polyring::Polynomial;
use crate::scalars::{Field, Matrix};

use super::HomologyError;

/// Graded free module `⊕ A(-g_i)`, recorded by its generator degrees.
///
/// Degree-`d` coordinates are the blocks `A_{d-g_i}` laid out in generator
/// order, each in the algebra's monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    degrees: Vec<i32>,
}

/// One generator's slice of a degree-`d` coordinate vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub generator: usize,
    pub offset: usize,
    pub len: usize,
    /// Algebra degree `d - g` of the block.
    pub alg_degree: usize,
}

impl FreeModule {
    pub fn new(degrees: Vec<i32>) -> Self {
        FreeModule { degrees }
    }

    pub fn zero() -> Self {
        FreeModule { degrees: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `Hom(F, A)`: generator degrees negated.
    pub fn dual(&self) -> FreeModule {
        FreeModule::new(self.degrees.iter().map(|g| -g).collect())
    }

    /// Shifts every generator degree by `s`.
    pub fn shifted(&self, s: i32) -> FreeModule {
        FreeModule::new(self.degrees.iter().map(|g| g + s).collect())
    }

    pub fn blocks<F: Field>(&self, alg: &GradedAlgebra<F>, d: i32) -> Vec<Block> {
        let mut offset = 0;
        let mut out = Vec::new();
        for (i, &g) in self.degrees.iter().enumerate() {
            let e = d - g;
            if e < 0 || e as usize > alg.top_degree() {
                continue;
            }
            let len = alg.dim(e as usize);
            out.push(Block {
                generator: i,
                offset,
                len,
                alg_degree: e as usize,
            });
            offset += len;
        }
        out
    }

    pub fn dim<F: Field>(&self, alg: &GradedAlgebra<F>, d: i32) -> usize {
        self.degrees
            .iter()
            .map(|&g| d - g)
            .filter(|&e| e >= 0 && e as usize <= alg.top_degree())
            .map(|e| alg.dim(e as usize))
            .sum()
    }

    /// Internal degrees where the module can be nonzero.
    pub fn degree_range<F: Field>(&self, alg: &GradedAlgebra<F>) -> Option<(i32, i32)> {
        let lo = *self.degrees.iter().min()?;
        let hi = *self.degrees.iter().max()? + alg.top_degree() as i32;
        Some((lo, hi))
    }

    /// Generator `j` as a vector in degree `g_j`.
    pub fn unit<F: Field>(&self, alg: &GradedAlgebra<F>, j: usize) -> Vec<F::Elem> {
        let f = alg.field();
        let d = self.degrees[j];
        let mut v = vec![f.zero(); self.dim(alg, d)];
        let b = self
            .blocks(alg, d)
            .into_iter()
            .find(|b| b.generator == j)
            .expect("generator block");
        v[b.offset] = f.one();
        v
    }

    /// Places `a` (in `A_{d-g_j}`) as the `j`-th component of a degree-`d` vector.
    pub fn embed_component<F: Field>(&self, alg: &GradedAlgebra<F>, d: i32, j: usize, a: &[F::Elem]) -> Vec<F::Elem> {
        let f = alg.field();
        let mut v = vec![f.zero(); self.dim(alg, d)];
        if let Some(b) = self.blocks(alg, d).into_iter().find(|b| b.generator == j) {
            v[b.offset..b.offset + b.len].clone_from_slice(a);
        }
        v
    }

    /// Component `j` of a degree-`d` vector, as an element of `A_{d-g_j}`.
    pub fn component<F: Field>(&self, alg: &GradedAlgebra<F>, d: i32, v: &[F::Elem], j: usize) -> (i32, Vec<F::Elem>) {
        let e = d - self.degrees[j];
        match self.blocks(alg, d).into_iter().find(|b| b.generator == j) {
            Some(b) => (e, v[b.offset..b.offset + b.len].to_vec()),
            None => (e, Vec::new()),
        }
    }

    /// `x_k * v` for `v` of degree `d`.
    pub fn mul_var<F: Field>(&self, alg: &GradedAlgebra<F>, d: i32, k: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = alg.field();
        let mut out = vec![f.zero(); self.dim(alg, d + 1)];
        let next = self.blocks(alg, d + 1);
        for b in self.blocks(alg, d) {
            if let Some(nb) = next.iter().find(|nb| nb.generator == b.generator) {
                let w = alg.mul_var_vec(b.alg_degree, k, &v[b.offset..b.offset + b.len]);
                out[nb.offset..nb.offset + nb.len].clone_from_slice(&w);
            }
        }
        out
    }

    /// `a * v` for `a` in `A_e` and `v` of degree `d`.
    pub fn mul_elem<F: Field>(
        &self,
        alg: &GradedAlgebra<F>,
        e: usize,
        a: &[F::Elem],
        d: i32,
        v: &[F::Elem],
    ) -> Vec<F::Elem> {
        let f = alg.field();
        let mut out = vec![f.zero(); self.dim(alg, d + e as i32)];
        let next = self.blocks(alg, d + e as i32);
        for b in self.blocks(alg, d) {
            if let Some(nb) = next.iter().find(|nb| nb.generator == b.generator) {
                let w = alg.mul(e, a, b.alg_degree, &v[b.offset..b.offset + b.len]);
                out[nb.offset..nb.offset + nb.len].clone_from_slice(&w);
            }
        }
        out
    }

    /// `B_e[i] * v` for every basis monomial of degree `e`.
    pub fn orbit_layer<F: Field>(&self, alg: &GradedAlgebra<F>, d: i32, v: &[F::Elem], e: usize) -> Vec<Vec<F::Elem>> {
        let mut w = OrbitWalker::new(d, v.to_vec());
        for _ in 0..e {
            w.advance(alg, self);
        }
        w.layer
    }
}

/// Products `b * v` for all basis monomials `b` of one degree at a time,
/// stepping the degree up through the parent chain.
#[derive(Debug, Clone)]
pub(crate) struct OrbitWalker<E> {
    pub base: i32,
    pub e: usize,
    pub layer: Vec<Vec<E>>,
}

impl<E: Clone> OrbitWalker<E> {
    pub fn new(d: i32, v: Vec<E>) -> Self {
        OrbitWalker {
            base: d,
            e: 0,
            layer: vec![v],
        }
    }

    pub fn advance<F: Field<Elem = E>>(&mut self, alg: &GradedAlgebra<F>, m: &FreeModule) {
        let e = self.e + 1;
        let d = self.base + self.e as i32;
        self.layer = (0..alg.dim(e))
            .map(|i| {
                let (k, j) = alg.parent(e, i);
                m.mul_var(alg, d, k, &self.layer[j])
            })
            .collect();
        self.e = e;
    }

    /// Moves to layer `e` (never backwards); returns the layer, empty past
    /// the top degree.
    pub fn at<F: Field<Elem = E>>(&mut self, alg: &GradedAlgebra<F>, m: &FreeModule, e: usize) -> &[Vec<E>] {
        debug_assert!(e >= self.e);
        if e > alg.top_degree() {
            self.layer.clear();
            self.e = e;
            return &self.layer;
        }
        while self.e < e {
            self.advance(alg, m);
        }
        &self.layer
    }
}

/// Homogeneous map of graded free modules, stored by the images of the
/// source generators.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap<F: Field> {
    source: FreeModule,
    target: FreeModule,
    columns: Vec<Vec<F::Elem>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(
        alg: &GradedAlgebra<F>,
        source: FreeModule,
        target: FreeModule,
        columns: Vec<Vec<F::Elem>>,
    ) -> Result<Self, HomologyError> {
        if columns.len() != source.rank() {
            return Err(HomologyError::DimensionMismatch {
                expected: source.rank(),
                found: columns.len(),
            });
        }
        for (j, c) in columns.iter().enumerate() {
            let want = target.dim(alg, source.degrees()[j]);
            if c.len() != want {
                return Err(HomologyError::DimensionMismatch {
                    expected: want,
                    found: c.len(),
                });
            }
        }
        Ok(ModuleMap {
            source,
            target,
            columns,
        })
    }

    pub fn zero(alg: &GradedAlgebra<F>, source: FreeModule, target: FreeModule) -> Self {
        let f = alg.field();
        let columns = source
            .degrees()
            .iter()
            .map(|&g| vec![f.zero(); target.dim(alg, g)])
            .collect();
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    /// Builds a map from a matrix of polynomials (`entries[i][j]`: target
    /// generator `i`, source generator `j`), each entry homogeneous of degree
    /// `g_j - t_i` or zero in the algebra.
    pub fn from_polys(
        alg: &GradedAlgebra<F>,
        source: FreeModule,
        target: FreeModule,
        entries: &[Vec<Polynomial<F>>],
    ) -> Result<Self, HomologyError> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(HomologyError::DimensionMismatch {
                expected: target.rank() * source.rank(),
                found: entries.iter().map(Vec::len).sum(),
            });
        }
        let mut columns = Vec::with_capacity(source.rank());
        for (j, &g) in source.degrees().iter().enumerate() {
            let mut col = vec![alg.field().zero(); target.dim(alg, g)];
            for (i, &t) in target.degrees().iter().enumerate() {
                let p = &entries[i][j];
                let e = g - t;
                let nf = alg.normal_form(p);
                let offsets = alg.offsets();
                for (deg, &off) in offsets.iter().enumerate() {
                    let part = &nf[off..off + alg.dim(deg)];
                    if deg as i32 != e && part.iter().any(|x| !alg.field().is_zero(x)) {
                        return Err(HomologyError::InhomogeneousEntry { row: i, col: j });
                    }
                }
                if e >= 0 && (e as usize) <= alg.top_degree() {
                    let off = offsets[e as usize];
                    let block = target
                        .blocks(alg, g)
                        .into_iter()
                        .find(|b| b.generator == i)
                        .expect("block present");
                    col[block.offset..block.offset + block.len].clone_from_slice(&nf[off..off + block.len]);
                }
            }
            columns.push(col);
        }
        Ok(ModuleMap {
            source,
            target,
            columns,
        })
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[Vec<F::Elem>] {
        &self.columns
    }

    pub fn is_zero(&self, alg: &GradedAlgebra<F>) -> bool {
        self.columns.iter().flatten().all(|x| alg.field().is_zero(x))
    }

    /// Entry `(i, j)` as `(algebra degree, coordinates)`.
    pub fn entry(&self, alg: &GradedAlgebra<F>, i: usize, j: usize) -> (i32, Vec<F::Elem>) {
        self.target
            .component(alg, self.source.degrees()[j], &self.columns[j], i)
    }

    pub fn entry_poly(&self, alg: &GradedAlgebra<F>, i: usize, j: usize) -> Polynomial<F> {
        let (e, v) = self.entry(alg, i, j);
        if v.is_empty() {
            Polynomial::zero(alg.field(), alg.spec().context())
        } else {
            alg.element_poly(e as usize, &v)
        }
    }

    /// Every entry lies in the maximal ideal.
    pub fn is_minimal(&self, alg: &GradedAlgebra<F>) -> bool {
        let f = alg.field();
        (0..self.source.rank()).all(|j| {
            (0..self.target.rank()).all(|i| {
                let (e, v) = self.entry(alg, i, j);
                e != 0 || v.iter().all(|x| f.is_zero(x))
            })
        })
    }

    /// Images of the degree-`d` basis of the source, in source coordinate
    /// order, as vectors of the target in degree `d`.
    pub fn images_in_degree(&self, alg: &GradedAlgebra<F>, d: i32) -> Vec<Vec<F::Elem>> {
        let mut out = Vec::with_capacity(self.source.dim(alg, d));
        for b in self.source.blocks(alg, d) {
            let g = self.source.degrees()[b.generator];
            out.extend(
                self.target
                    .orbit_layer(alg, g, &self.columns[b.generator], b.alg_degree),
            );
        }
        out
    }

    /// The degree-`d` component as a dense `target_d x source_d` matrix.
    pub fn matrix_in_degree(&self, alg: &GradedAlgebra<F>, d: i32) -> Matrix<F> {
        Matrix::from_columns(alg.field(), self.target.dim(alg, d), &self.images_in_degree(alg, d))
    }

    pub fn apply(&self, alg: &GradedAlgebra<F>, d: i32, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = alg.field();
        let mut out = vec![f.zero(); self.target.dim(alg, d)];
        for (x, col) in v.iter().zip(self.images_in_degree(alg, d)) {
            if !f.is_zero(x) {
                f.sub_mul_assign(&mut out, &f.neg(x), &col);
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, alg: &GradedAlgebra<F>, inner: &ModuleMap<F>) -> Result<ModuleMap<F>, HomologyError> {
        if inner.target != self.source {
            return Err(HomologyError::NotComposable);
        }
        let columns = inner
            .source
            .degrees()
            .iter()
            .zip(&inner.columns)
            .map(|(&g, c)| self.apply(alg, g, c))
            .collect();
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            columns,
        })
    }

    /// `Hom(-, A)` applied to the map: `target* -> source*`, the transposed
    /// matrix of algebra elements.
    pub fn dual(&self, alg: &GradedAlgebra<F>) -> ModuleMap<F> {
        let src = self.target.dual();
        let tgt = self.source.dual();
        let columns = (0..self.target.rank())
            .map(|i| {
                let d = src.degrees()[i];
                let f = alg.field();
                let mut col = vec![f.zero(); tgt.dim(alg, d)];
                for b in tgt.blocks(alg, d) {
                    let (_, v) = self.entry(alg, i, b.generator);
                    if !v.is_empty() {
                        col[b.offset..b.offset + b.len].clone_from_slice(&v);
                    }
                }
                col
            })
            .collect();
        ModuleMap {
            source: src,
            target: tgt,
            columns,
        }
    }

    /// Same matrix with both modules shifted by `s`.
    pub fn shifted(&self, s: i32) -> ModuleMap<F> {
        ModuleMap {
            source: self.source.shifted(s),
            target: self.target.shifted(s),
            columns: self.columns.clone(),
        }
    }

    /// Rank of the degree-`d` component.
    pub fn rank_in_degree(&self, alg: &GradedAlgebra<F>, d: i32) -> usize {
        let td = self.target.dim(alg, d);
        let mut ech = crate::scalars::EchelonBasis::new(alg.field(), td);
        ech.extend(self.images_in_degree(alg, d), Some(td));
        ech.rank()
    }
}
