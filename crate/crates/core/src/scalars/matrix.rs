use std::fmt;

use super::field::{Field, Scalar};
use super::par::{self, Parallelism};
use super::ScalarError;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Nullspace basis in the canonical free-variable form: one vector per
    /// non-pivot column, with a 1 in that column and zeros in the other free
    /// columns.
    pub fn nullspace_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.matrix.field;
        let cols = self.matrix.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); cols];
                v[free] = f.one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = f.neg(self.matrix.get(r, free));
                }
                v
            })
            .collect()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.desc())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, ScalarError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(ScalarError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix from columns given as vectors of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                if !field.is_zero(x) {
                    m.set(r, c, x.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from runtime-tagged scalars; every entry must carry
    /// the descriptor of `field`.
    pub fn from_scalars(field: &F, rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self, ScalarError> {
        if entries.len() != rows * cols {
            return Err(ScalarError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let data = entries
            .iter()
            .map(|s| field.from_scalar(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: F::Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, ScalarError> {
        if v.len() != self.cols {
            return Err(ScalarError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, ScalarError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch {
                expected: self.field.desc(),
                found: other.field.desc(),
            });
        }
        if self.cols != other.rows {
            return Err(ScalarError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                let neg = f.neg(a);
                let start = r * other.cols;
                f.sub_mul_assign(&mut out.data[start..start + other.cols], &neg, other.row(k));
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination in place; returns pivot columns.
    ///
    /// Pivot rule: leftmost column with a nonzero entry among the remaining
    /// rows, first such row.
    pub fn rref_in_place_with(&mut self, mode: Parallelism) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..cols {
            if next_row == self.rows {
                break;
            }
            let Some(pr) = (next_row..self.rows).find(|&r| !f.is_zero(self.get(r, c))) else {
                continue;
            };
            if pr != next_row {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, next_row * cols + k);
                }
            }
            let inv = f.inv(self.get(next_row, c));
            let start = next_row * cols;
            f.scale_assign(&mut self.data[start + c..start + cols], &inv);
            let pivot_row: Vec<F::Elem> = self.data[start + c..start + cols].to_vec();
            let skip = next_row;
            par::for_each_chunk_mut(&mut self.data, cols, mode, |r, row| {
                if r != skip && !f.is_zero(&row[c]) {
                    let factor = row[c].clone();
                    f.sub_mul_assign(&mut row[c..], &factor, &pivot_row);
                }
            });
            pivots.push(c);
            next_row += 1;
        }
        pivots
    }

    pub fn rref_with(&self, mode: Parallelism) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place_with(mode);
        Rref { matrix: m, pivots }
    }

    pub fn rref(&self) -> Rref<F> {
        self.rref_with(par::parallelism())
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<F::Elem>> {
        self.rref().nullspace_basis()
    }

    /// Some solution of `self * x = b`, free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve_linear(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, ScalarError> {
        if b.len() != self.rows {
            return Err(ScalarError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref_in_place_with(par::parallelism());
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Determinant by elimination. Square matrices only.
    pub fn det(&self) -> Result<F::Elem, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !f.is_zero(m.get(r, c))) else {
                return Ok(f.zero());
            };
            if pr != c {
                for k in 0..n {
                    m.data.swap(pr * n + k, c * n + k);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot);
            let pivot_row: Vec<F::Elem> = m.row(c)[c..].to_vec();
            for r in c + 1..n {
                if f.is_zero(m.get(r, c)) {
                    continue;
                }
                let factor = f.mul(m.get(r, c), &inv);
                f.sub_mul_assign(&mut m.data[r * n + c..(r + 1) * n], &factor, &pivot_row);
            }
        }
        Ok(det)
    }
}
