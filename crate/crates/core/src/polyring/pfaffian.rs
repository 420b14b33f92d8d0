use std::collections::HashMap;
use std::sync::Arc;

use crate::scalars::Field;

use super::{PolyContext, PolyError, Polynomial};

/// Skew-symmetric matrix of polynomials, stored by its strict upper
/// triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<F: Field> {
    size: usize,
    field: F,
    ctx: Arc<PolyContext>,
    upper: Vec<Polynomial<F>>,
}

fn upper_index(size: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < size);
    // rows 0..i contribute (size-1) + (size-2) + ... entries
    i * (2 * size - i - 1) / 2 + (j - i - 1)
}

impl<F: Field> SkewMatrix<F> {
    pub fn zero(field: &F, ctx: &Arc<PolyContext>, size: usize) -> Self {
        SkewMatrix {
            size,
            field: field.clone(),
            ctx: ctx.clone(),
            upper: vec![Polynomial::zero(field, ctx); size * size.saturating_sub(1) / 2],
        }
    }

    /// Generic matrix over a fresh context with variables `t{i}{j}`
    /// (1-based, `i < j`).
    pub fn generic(field: &F, size: usize) -> Self {
        let names: Vec<String> = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| generic_name(i, j)))
            .collect();
        let ctx = PolyContext::new(names).expect("generic names are valid");
        let mut a = Self::zero(field, &ctx, size);
        for k in 0..a.upper.len() {
            a.upper[k] = Polynomial::var(field, &ctx, k);
        }
        a
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Sets entry `(i, j)` for `i < j`; the mirrored entry follows.
    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) -> Result<(), PolyError> {
        if p.context() != &self.ctx {
            return Err(PolyError::ContextMismatch);
        }
        let (a, b, q) = match i.cmp(&j) {
            std::cmp::Ordering::Less => (i, j, p),
            std::cmp::Ordering::Greater => (j, i, p.neg()),
            std::cmp::Ordering::Equal => return Err(PolyError::SkewDiagonal),
        };
        let k = upper_index(self.size, a, b);
        self.upper[k] = q;
        Ok(())
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial<F> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[upper_index(self.size, i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[upper_index(self.size, j, i)].neg(),
            std::cmp::Ordering::Equal => Polynomial::zero(&self.field, &self.ctx),
        }
    }

    /// Full `size x size` grid of entries, row-major.
    pub fn to_rows(&self) -> Vec<Vec<Polynomial<F>>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Applies `g` to every upper entry (e.g. a substitution).
    pub fn map_entries<G: Field>(
        &self,
        field: &G,
        ctx: &Arc<PolyContext>,
        mut g: impl FnMut(&Polynomial<F>) -> Result<Polynomial<G>, PolyError>,
    ) -> Result<SkewMatrix<G>, PolyError> {
        let upper = self.upper.iter().map(&mut g).collect::<Result<Vec<_>, _>>()?;
        if upper.iter().any(|p| p.context() != ctx) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(SkewMatrix {
            size: self.size,
            field: field.clone(),
            ctx: ctx.clone(),
            upper,
        })
    }
}

pub fn generic_name(i: usize, j: usize) -> String {
    format!("t{}{}", i + 1, j + 1)
}

/// Pfaffian by expansion along the first remaining row, memoized on the
/// set of surviving indices. Odd sizes give zero.
pub fn pfaffian<F: Field>(a: &SkewMatrix<F>) -> Polynomial<F> {
    let all: Vec<usize> = (0..a.size).collect();
    pfaffian_of(a, &all, &mut HashMap::new())
}

fn pfaffian_of<F: Field>(a: &SkewMatrix<F>, idx: &[usize], memo: &mut HashMap<u64, Polynomial<F>>) -> Polynomial<F> {
    if idx.is_empty() {
        return Polynomial::constant(&a.field, &a.ctx, a.field.one());
    }
    if idx.len() % 2 == 1 {
        return Polynomial::zero(&a.field, &a.ctx);
    }
    let key = idx.iter().fold(0u64, |m, &i| m | (1 << i));
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let first = idx[0];
    let mut out = Polynomial::zero(&a.field, &a.ctx);
    for k in 1..idx.len() {
        let e = a.entry(first, idx[k]);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
        let sub = pfaffian_of(a, &rest, memo);
        let term = e.mul(&sub).expect("shared context");
        out = if k % 2 == 1 { out.add(&term) } else { out.sub(&term) }.expect("shared context");
    }
    memo.insert(key, out.clone());
    out
}

/// Signed submaximal Pfaffians `s_j = (-1)^(j+1) Pf(A without row/col j)`
/// (1-based `j`), the sign pattern making `A * s = 0`.
pub fn submax_pfaffians<F: Field>(a: &SkewMatrix<F>) -> Result<Vec<Polynomial<F>>, PolyError> {
    if a.size % 2 == 0 || a.size < 3 {
        return Err(PolyError::EvenPfaffianSize(a.size));
    }
    let mut memo = HashMap::new();
    Ok((0..a.size)
        .map(|j| {
            let rest: Vec<usize> = (0..a.size).filter(|&x| x != j).collect();
            let p = pfaffian_of(a, &rest, &mut memo);
            // 0-based j even <=> 1-based j odd <=> positive sign
            if j % 2 == 0 {
                p
            } else {
                p.neg()
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::scalars::{Matrix, RationalField};

    #[test]
    fn base_and_odd_cases() {
        let f = RationalField;
        let a2 = SkewMatrix::generic(&f, 2);
        assert_eq!(pfaffian(&a2).to_string(), "t12");
        assert!(pfaffian(&SkewMatrix::generic(&f, 3)).is_zero());
    }

    #[test]
    fn four_by_four() {
        let f = RationalField;
        let a = SkewMatrix::generic(&f, 4);
        let expect = parse_poly(&f, a.context(), "t12*t34 - t13*t24 + t14*t23").unwrap();
        assert_eq!(pfaffian(&a), expect);
    }

    #[test]
    fn square_is_determinant_at_points() {
        let f = RationalField;
        let a = SkewMatrix::generic(&f, 6);
        let pf = pfaffian(&a);
        let n = a.context().nvars();
        for seed in 0..20i64 {
            let point: Vec<_> = (0..n as i64)
                .map(|k| f.from_i64((seed * 7 + k * k * 3) % 11 - 5))
                .collect();
            let rows: Vec<Vec<_>> = a
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|p| p.evaluate(&point)).collect())
                .collect();
            let m = Matrix::from_rows(&f, 6, rows).unwrap();
            let v = pf.evaluate(&point);
            assert_eq!(f.mul(&v, &v), m.det().unwrap());
        }
    }

    #[test]
    fn submaximal_pfaffians_of_three() {
        let f = RationalField;
        let a = SkewMatrix::generic(&f, 3);
        let s: Vec<String> = submax_pfaffians(&a).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["t23", "-t13", "t12"]);
        assert_eq!(
            submax_pfaffians(&SkewMatrix::generic(&f, 4)).unwrap_err(),
            PolyError::EvenPfaffianSize(4)
        );
    }

    #[test]
    fn skew_entries_mirror() {
        let f = RationalField;
        let ctx = PolyContext::new(["x"]).unwrap();
        let mut a = SkewMatrix::zero(&f, &ctx, 3);
        a.set(2, 0, Polynomial::var(&f, &ctx, 0)).unwrap();
        assert_eq!(a.entry(0, 2).to_string(), "-x");
        assert_eq!(a.entry(2, 0).to_string(), "x");
        assert!(a.entry(1, 1).is_zero());
        assert_eq!(a.set(1, 1, Polynomial::var(&f, &ctx, 0)), Err(PolyError::SkewDiagonal));
    }
}
