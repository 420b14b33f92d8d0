use super::field::Field;
use super::par::{self, Parallelism};

/// An incrementally built subspace of `F^dim` kept in semi-echelon form.
///
/// Each stored row has a leading 1 at its pivot and zeros in every column
/// left of it. Reducing a vector walks the columns left to right, which
/// clears every pivot coordinate regardless of insertion order.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

const BATCH: usize = 64;

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col].is_some()
    }

    /// Stored rows in insertion order.
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Reduces `v` in place modulo the span; afterwards every pivot
    /// coordinate of `v` is zero.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        debug_assert_eq!(v.len(), self.dim);
        let f = &self.field;
        for c in 0..self.dim {
            if f.is_zero(&v[c]) {
                continue;
            }
            if let Some(r) = self.row_of_col[c] {
                let factor = v[c].clone();
                f.sub_mul_assign(&mut v[c..], &factor, &self.rows[r][c..]);
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds an already reduced vector; returns whether it enlarged the span.
    fn push_reduced(&mut self, mut v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        if !f.is_one(&v[p]) {
            let inv = f.inv(&v[p]);
            f.scale_assign(&mut v[p..], &inv);
        }
        self.row_of_col[p] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        self.reduce(&mut v);
        self.push_reduced(v)
    }

    /// Inserts vectors in order, stopping once the rank reaches `stop_at`.
    /// Returns the indices (into the input order) of the vectors that
    /// enlarged the span.
    ///
    /// Vectors are first reduced in batches against the current basis
    /// (data-parallel), then finished sequentially against rows added within
    /// the batch, so the result is independent of the execution mode.
    pub fn extend_with(&mut self, vectors: Vec<Vec<F::Elem>>, stop_at: Option<usize>, mode: Parallelism) -> Vec<usize> {
        let limit = stop_at.unwrap_or(self.dim).min(self.dim);
        let mut accepted = Vec::new();
        let mut iter = vectors.into_iter().enumerate().peekable();
        while self.rank() < limit && iter.peek().is_some() {
            let mut batch: Vec<(usize, Vec<F::Elem>)> = iter.by_ref().take(BATCH).collect();
            {
                let this = &*self;
                par::for_each_mut(&mut batch, mode, |(_, v)| this.reduce(v));
            }
            for (idx, mut v) in batch {
                if self.rank() >= limit {
                    break;
                }
                self.reduce(&mut v);
                if self.push_reduced(v) {
                    accepted.push(idx);
                }
            }
        }
        accepted
    }

    pub fn extend(&mut self, vectors: Vec<Vec<F::Elem>>, stop_at: Option<usize>) -> Vec<usize> {
        self.extend_with(vectors, stop_at, par::parallelism())
    }

    /// Coordinates of `v` modulo the span, read off the non-pivot columns
    /// in increasing order.
    pub fn quotient_coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.into_iter()
            .enumerate()
            .filter(|(c, _)| self.row_of_col[*c].is_none())
            .map(|(_, x)| x)
            .collect()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.row_of_col[c].is_none()).collect()
    }
}
