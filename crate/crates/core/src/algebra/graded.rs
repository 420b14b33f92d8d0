use std::collections::HashMap;

use crate::polyring::{Monomial, Polynomial};
use crate::scalars::{EchelonBasis, Field, Matrix};

use super::{AlgebraError, AlgebraSpec};

pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// Sparse column: `(row, coefficient)` pairs with nonzero coefficients.
pub type SparseVec<E> = Vec<(usize, E)>;

/// A finite-dimensional standard-graded quotient algebra with a monomial
/// basis in each degree.
///
/// Degree `d` is built as `(V ⊗ A_{d-1}) / K` where `V` is the span of the
/// variables and `K` is spanned by commutation relations and the lifts of
/// degree-`d` relations, so the linear algebra never leaves spaces of size
/// `n * dim A_{d-1}`.
#[derive(Debug, Clone)]
pub struct GradedAlgebra<F: Field> {
    spec: AlgebraSpec<F>,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    // parents[d][i] = (k, j): B_d[i] = x_k * B_{d-1}[j]
    parents: Vec<Vec<(usize, usize)>>,
    // mul[d][k][i] = coordinates of x_k * B_d[i] in B_{d+1}
    mul: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
    relation_ranks: Vec<usize>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn build(spec: &AlgebraSpec<F>, degree_cap: u32) -> Result<Self, AlgebraError> {
        if degree_cap < 2 {
            return Err(AlgebraError::DegreeCapTooSmall(degree_cap));
        }
        let f = spec.field().clone();
        let n = spec.nvars();
        let one = Monomial::one(n);
        let mut alg = GradedAlgebra {
            spec: spec.clone(),
            bases: vec![vec![one.clone()]],
            index: vec![HashMap::from([(one, 0)])],
            parents: vec![vec![]],
            mul: Vec::new(),
            relation_ranks: Vec::new(),
        };
        if n == 0 {
            alg.mul.push(Vec::new());
            return Ok(alg);
        }
        let vars: Vec<Monomial> = (0..n).map(|k| Monomial::var(n, k)).collect();
        alg.index
            .push(vars.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
        alg.bases.push(vars);
        alg.parents.push((0..n).map(|k| (k, 0)).collect());
        alg.mul.push((0..n).map(|k| vec![vec![(k, f.one())]]).collect());

        let mut by_degree: HashMap<u32, Vec<&Polynomial<F>>> = HashMap::new();
        for r in spec.relations() {
            by_degree
                .entry(r.degree().expect("nonzero relation"))
                .or_default()
                .push(r);
        }
        let max_rel = by_degree.keys().copied().max().unwrap_or(1);
        alg.relation_ranks = (0..=max_rel)
            .map(|d| relation_rank(&f, n, d, by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[])))
            .collect();

        for d in 2..=degree_cap {
            let rels = by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[]);
            let prev = &alg.bases[(d - 1) as usize];
            let m = prev.len();
            // column (k, j) <-> x_k * B_{d-1}[j]; larger labels first so pivots
            // land on them and the surviving basis is made of small monomials
            let mut cols: Vec<(usize, usize)> = (0..n).flat_map(|k| (0..m).map(move |j| (k, j))).collect();
            let label = |&(k, j): &(usize, usize)| prev[j].mul_var(k);
            cols.sort_by(|a, b| label(b).cmp(&label(a)).then(a.0.cmp(&b.0)));
            let mut pos = vec![0; n * m];
            for (p, &(k, j)) in cols.iter().enumerate() {
                pos[k * m + j] = p;
            }
            let ncols = n * m;
            let mut rows: Vec<Vec<F::Elem>> = Vec::new();
            let below = &alg.mul[(d - 2) as usize];
            for b in 0..alg.bases[(d - 2) as usize].len() {
                for i in 0..n {
                    for j in i + 1..n {
                        let mut v = vec![f.zero(); ncols];
                        for (r, c) in &below[j][b] {
                            let p = pos[i * m + r];
                            v[p] = f.add(&v[p], c);
                        }
                        for (r, c) in &below[i][b] {
                            let p = pos[j * m + r];
                            v[p] = f.sub(&v[p], c);
                        }
                        rows.push(v);
                    }
                }
            }
            for r in rels {
                let mut v = vec![f.zero(); ncols];
                for (mono, c) in r.terms() {
                    let k = mono.first_var().expect("positive degree");
                    let rest = mono.div_var(k).expect("divisible");
                    for (idx, x) in alg.nf_monomial(&rest).into_iter().enumerate() {
                        if !f.is_zero(&x) {
                            let p = pos[k * m + idx];
                            v[p] = f.add(&v[p], &f.mul(c, &x));
                        }
                    }
                }
                rows.push(v);
            }
            let mut ech = EchelonBasis::new(&f, ncols);
            ech.extend(rows, None);
            let reduced = Matrix::from_rows(&f, ncols, ech.rows().to_vec())
                .expect("uniform rows")
                .rref();
            let mut row_of_pivot = vec![None; ncols];
            for (r, &p) in reduced.pivots.iter().enumerate() {
                row_of_pivot[p] = Some(r);
            }
            let free: Vec<usize> = (0..ncols).filter(|&p| row_of_pivot[p].is_none()).collect();
            let mut free_index = vec![usize::MAX; ncols];
            for (i, &p) in free.iter().enumerate() {
                free_index[p] = i;
            }

            let mut table: Vec<Vec<SparseVec<F::Elem>>> = vec![vec![Vec::new(); m]; n];
            for k in 0..n {
                for j in 0..m {
                    let p = pos[k * m + j];
                    table[k][j] = match row_of_pivot[p] {
                        None => vec![(free_index[p], f.one())],
                        Some(r) => free
                            .iter()
                            .enumerate()
                            .filter_map(|(i, &q)| {
                                let x = reduced.matrix.get(r, q);
                                (!f.is_zero(x)).then(|| (i, f.neg(x)))
                            })
                            .collect(),
                    };
                }
            }
            alg.mul.push(table);
            if free.is_empty() {
                break;
            }
            if d == degree_cap {
                return Err(AlgebraError::NotFiniteDimensional {
                    degree: d,
                    dim: free.len(),
                });
            }
            let basis: Vec<Monomial> = free.iter().map(|&p| label(&cols[p])).collect();
            alg.parents.push(free.iter().map(|&p| cols[p]).collect());
            alg.index
                .push(basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
            alg.bases.push(basis);
        }
        let top = alg.bases.len() - 1;
        alg.mul.truncate(top + 1);
        Ok(alg)
    }

    pub fn spec(&self) -> &AlgebraSpec<F> {
        &self.spec
    }

    pub fn field(&self) -> &F {
        self.spec.field()
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars()
    }

    /// Highest degree with a nonzero component.
    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.bases.get(d).map_or(&[], Vec::as_slice)
    }

    /// `(k, j)` with `B_d[i] = x_k * B_{d-1}[j]`, for `d >= 1`.
    pub fn parent(&self, d: usize, i: usize) -> (usize, usize) {
        self.parents[d][i]
    }

    /// Rank of the span of the given relations in each degree (the
    /// effective relation count after removing dependencies).
    pub fn relation_ranks(&self) -> &[usize] {
        &self.relation_ranks
    }

    pub fn effective_relation_count(&self) -> usize {
        self.relation_ranks.iter().sum()
    }

    /// Multiplication by `x_k` as sparse columns `A_d -> A_{d+1}`.
    pub fn mul_var_table(&self, d: usize, k: usize) -> &[SparseVec<F::Elem>] {
        &self.mul[d][k]
    }

    /// `x_k * v` for `v` in `A_d`.
    pub fn mul_var_vec(&self, d: usize, k: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim(d + 1)];
        if out.is_empty() {
            return out;
        }
        for (i, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, c) in &self.mul[d][k][i] {
                out[*r] = f.add(&out[*r], &f.mul(x, c));
            }
        }
        out
    }

    /// Coordinates of a monomial's class in `B_{deg m}`; empty beyond the
    /// top degree.
    pub fn nf_monomial(&self, m: &Monomial) -> Vec<F::Elem> {
        let d = m.degree() as usize;
        let f = self.field();
        if d > self.top_degree() {
            return Vec::new();
        }
        if let Some(&i) = self.index[d].get(m) {
            let mut v = vec![f.zero(); self.dim(d)];
            v[i] = f.one();
            return v;
        }
        let k = m.first_var().expect("degree 0 monomial is a basis element");
        let below = self.nf_monomial(&m.div_var(k).expect("divisible"));
        self.mul_var_vec(d - 1, k, &below)
    }

    /// Class of a homogeneous polynomial in `A_d`. Returns `None` if `p` is
    /// not homogeneous; the zero polynomial maps to degree 0.
    pub fn nf_homogeneous(&self, p: &Polynomial<F>) -> Option<(usize, Vec<F::Elem>)> {
        if !p.is_homogeneous() {
            return None;
        }
        let d = p.degree().unwrap_or(0) as usize;
        Some((d, self.nf_in_degree(p, d)))
    }

    /// Degree-`d` part of the class of `p`.
    pub fn nf_in_degree(&self, p: &Polynomial<F>, d: usize) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim(d)];
        for (m, c) in p.terms() {
            if m.degree() as usize != d {
                continue;
            }
            for (i, x) in self.nf_monomial(m).iter().enumerate() {
                out[i] = f.add(&out[i], &f.mul(c, x));
            }
        }
        out
    }

    /// Offsets of each degree in the flattened coordinate vector.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.bases
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.len();
                o
            })
            .collect()
    }

    /// Coordinates of the class of `p` in `⊕ B_d`, degrees ascending.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Vec<F::Elem> {
        (0..=self.top_degree()).flat_map(|d| self.nf_in_degree(p, d)).collect()
    }

    /// `B_e[i] * v` for `v` in `A_d`, walking the parent chain.
    pub fn mul_basis(&self, e: usize, i: usize, d: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        if e == 0 {
            return v.to_vec();
        }
        let (k, j) = self.parents[e][i];
        let w = self.mul_basis(e - 1, j, d, v);
        if w.is_empty() {
            return vec![self.field().zero(); self.dim(d + e)];
        }
        self.mul_var_vec(d + e - 1, k, &w)
    }

    /// Images `B_e[i] * v` for every `e` and `i`, indexed `[e][i]`, sharing
    /// work along the parent chain.
    pub fn orbit(&self, d: usize, v: &[F::Elem]) -> Vec<Vec<Vec<F::Elem>>> {
        let mut out: Vec<Vec<Vec<F::Elem>>> = vec![vec![v.to_vec()]];
        for e in 1..=self.top_degree() {
            if d + e > self.top_degree() {
                break;
            }
            let layer: Vec<Vec<F::Elem>> = (0..self.dim(e))
                .map(|i| {
                    let (k, j) = self.parents[e][i];
                    self.mul_var_vec(d + e - 1, k, &out[e - 1][j])
                })
                .collect();
            out.push(layer);
        }
        out
    }

    /// Product of homogeneous elements `a` in `A_d` and `b` in `A_e`.
    pub fn mul(&self, d: usize, a: &[F::Elem], e: usize, b: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim(d + e)];
        if out.is_empty() {
            return out;
        }
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            let w = self.mul_basis(d, i, e, b);
            f.sub_mul_assign(&mut out, &f.neg(x), &w);
        }
        out
    }

    /// Polynomial in basis monomials representing a homogeneous element.
    pub fn element_poly(&self, d: usize, v: &[F::Elem]) -> Polynomial<F> {
        let f = self.field();
        Polynomial::from_terms(
            f,
            self.spec.context(),
            self.basis(d).iter().cloned().zip(v.iter().cloned()),
        )
    }

    /// Annihilator of the maximal ideal, computed degree by degree as the
    /// joint kernel of multiplication by every variable.
    pub fn socle(&self) -> Socle<F> {
        let f = self.field();
        let n = self.nvars();
        let mut basis = Vec::new();
        for d in 0..=self.top_degree() {
            let dim = self.dim(d);
            let next = self.dim(d + 1);
            if next == 0 || n == 0 {
                for i in 0..dim {
                    let mut v = vec![f.zero(); dim];
                    v[i] = f.one();
                    basis.push((d, v));
                }
                continue;
            }
            let mut m = Matrix::zeros(f, n * next, dim);
            for k in 0..n {
                for (i, col) in self.mul[d][k].iter().enumerate() {
                    for (r, c) in col {
                        m.set(k * next + r, i, c.clone());
                    }
                }
            }
            basis.extend(m.nullspace_basis().into_iter().map(|v| (d, v)));
        }
        let dim = basis.len();
        Socle {
            basis,
            dim,
            gorenstein: dim == 1,
        }
    }
}

/// Socle basis as `(degree, coordinates)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Socle<F: Field> {
    pub basis: Vec<(usize, Vec<F::Elem>)>,
    pub dim: usize,
    pub gorenstein: bool,
}

fn relation_rank<F: Field>(f: &F, n: usize, d: u32, rels: &[&Polynomial<F>]) -> usize {
    if rels.is_empty() {
        return 0;
    }
    let monos = Monomial::all_of_degree(n, d);
    let at: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = EchelonBasis::new(f, monos.len());
    for r in rels {
        let mut v = vec![f.zero(); monos.len()];
        for (m, c) in r.terms() {
            v[at[m]] = c.clone();
        }
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, PolyContext};
    use crate::scalars::RationalField;

    fn spec(vars: &[&str], rels: &[&str]) -> AlgebraSpec<RationalField> {
        let f = RationalField;
        let ctx = PolyContext::new(vars.iter().copied()).unwrap();
        let rels = rels.iter().map(|r| parse_poly(&f, &ctx, r).unwrap()).collect();
        AlgebraSpec::new(&f, &ctx, rels).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let a = GradedAlgebra::build(&spec(&["x"], &["x^2"]), 12).unwrap();
        assert_eq!(a.hilbert(), vec![1, 1]);
        assert_eq!(a.top_degree(), 1);
        let s = a.socle();
        assert_eq!((s.dim, s.gorenstein), (1, true));
        assert_eq!(s.basis[0].0, 1);
    }

    #[test]
    fn two_squares() {
        let a = GradedAlgebra::build(&spec(&["x", "y"], &["x^2", "y^2"]), 12).unwrap();
        assert_eq!(a.hilbert(), vec![1, 2, 1]);
        assert_eq!(a.basis(2), &[Monomial(vec![1, 1])]);
        assert!(a.socle().gorenstein);
    }

    #[test]
    fn maximal_ideal_squared() {
        let a = GradedAlgebra::build(&spec(&["x", "y"], &["x^2", "x*y", "y^2"]), 12).unwrap();
        assert_eq!(a.hilbert(), vec![1, 2]);
        let s = a.socle();
        assert_eq!((s.dim, s.gorenstein), (2, false));
    }

    #[test]
    fn polynomial_ring_hits_the_cap() {
        let err = GradedAlgebra::build(&spec(&["x", "y"], &[]), 5).unwrap_err();
        assert_eq!(err, AlgebraError::NotFiniteDimensional { degree: 5, dim: 6 });
    }

    #[test]
    fn normal_forms_respect_relations() {
        let a = GradedAlgebra::build(&spec(&["x", "y"], &["x^2 - y^2", "x*y"]), 12).unwrap();
        assert_eq!(a.hilbert(), vec![1, 2, 1]);
        let f = RationalField;
        let ctx = a.spec().context().clone();
        let x2 = a.normal_form(&parse_poly(&f, &ctx, "x^2").unwrap());
        let y2 = a.normal_form(&parse_poly(&f, &ctx, "y^2").unwrap());
        assert_eq!(x2, y2);
        assert!(a
            .normal_form(&parse_poly(&f, &ctx, "x*y").unwrap())
            .iter()
            .all(|c| f.is_zero(c)));
        let one = a.normal_form(&parse_poly(&f, &ctx, "1").unwrap());
        assert_eq!(one[0], f.one());
        assert!(one[1..].iter().all(|c| f.is_zero(c)));
        assert!(a.socle().gorenstein);
    }

    #[test]
    fn higher_degree_relation() {
        let a = GradedAlgebra::build(&spec(&["x", "y"], &["x*y", "x^3", "y^4"]), 12).unwrap();
        assert_eq!(a.hilbert(), vec![1, 2, 2, 1]);
        assert_eq!(a.relation_ranks(), &[0, 0, 1, 1, 1]);
        let s = a.socle();
        assert_eq!(s.dim, 2);
    }
}
