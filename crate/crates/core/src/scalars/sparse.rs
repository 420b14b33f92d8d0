use std::collections::BTreeMap;

use super::field::Field;

/// Sparse vector as `(column, value)` pairs, sorted by column, no zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Semi-echelon basis with sparse rows, for large and very sparse spans.
///
/// Each row starts with a 1 at its pivot. Reduction sweeps columns left to
/// right, so after reducing a vector all pivot coordinates are zero.
#[derive(Debug, Clone)]
pub struct SparseEchelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseRow<F::Elem>>,
    row_of_col: BTreeMap<usize, usize>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        SparseEchelon {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            row_of_col: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col.contains_key(&col)
    }

    fn reduce_map(&self, v: &mut BTreeMap<usize, F::Elem>) {
        let f = &self.field;
        let mut cursor = 0;
        while let Some((&c, x)) = v.range(cursor..).next() {
            cursor = c + 1;
            let Some(&r) = self.row_of_col.get(&c) else {
                continue;
            };
            let factor = x.clone();
            for (col, y) in &self.rows[r] {
                let t = f.mul(&factor, y);
                let e = v.entry(*col).or_insert_with(|| f.zero());
                *e = f.sub(e, &t);
                if f.is_zero(e) {
                    v.remove(col);
                }
            }
        }
    }

    fn to_map(&self, v: impl IntoIterator<Item = (usize, F::Elem)>) -> BTreeMap<usize, F::Elem> {
        let f = &self.field;
        let mut m: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (c, x) in v {
            debug_assert!(c < self.dim);
            let e = m.entry(c).or_insert_with(|| f.zero());
            *e = f.add(e, &x);
        }
        m.retain(|_, x| !f.is_zero(x));
        m
    }

    /// Reduces `v` (entries may repeat columns; they are summed).
    pub fn reduce(&self, v: impl IntoIterator<Item = (usize, F::Elem)>) -> SparseRow<F::Elem> {
        let mut m = self.to_map(v);
        self.reduce_map(&mut m);
        m.into_iter().collect()
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (usize, F::Elem)>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Returns whether `v` enlarged the span.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (usize, F::Elem)>) -> bool {
        let f = self.field.clone();
        let mut row = self.reduce(v);
        let Some((p, lead)) = row.first().cloned() else {
            return false;
        };
        if !f.is_one(&lead) {
            let inv = f.inv(&lead);
            for (_, x) in row.iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        self.row_of_col.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.row_of_col.contains_key(c)).collect()
    }
}
