use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalars::Field;

use super::PolyError;

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then larger exponents on earlier variables compare greater.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `self / x_i`, if `x_i` divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Pads (or embeds) into a context with `nvars` variables starting at
    /// `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Monomial(e)
    }

    /// All monomials of total degree `d` in `n` variables, in increasing order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=d {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered, named variables of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyContext {
    names: Vec<String>,
}

impl PolyContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(PolyError::BadVariableName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(PolyContext { names }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Sparse polynomial: nonzero coefficients keyed by exponent vector.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    field: F,
    ctx: Arc<PolyContext>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ctx == other.ctx && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: &F, ctx: &Arc<PolyContext>) -> Self {
        Polynomial {
            field: field.clone(),
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, ctx: &Arc<PolyContext>, c: F::Elem) -> Self {
        Self::term(field, ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn term(field: &F, ctx: &Arc<PolyContext>, m: Monomial, c: F::Elem) -> Self {
        assert_eq!(m.nvars(), ctx.nvars(), "exponent vector length");
        let mut p = Self::zero(field, ctx);
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(field: &F, ctx: &Arc<PolyContext>, i: usize) -> Self {
        Self::term(field, ctx, Monomial::var(ctx.nvars(), i), field.one())
    }

    pub fn from_terms(field: &F, ctx: &Arc<PolyContext>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree among terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = f.add(existing, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch);
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = Self::zero(f, &self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, &self.ctx);
        }
        Polynomial {
            field: f.clone(),
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), f.mul(x, c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    /// Substitutes `images[i]` for the i-th variable; all images must share
    /// one target context.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>, PolyError> {
        if images.len() != self.ctx.nvars() {
            return Err(PolyError::ContextMismatch);
        }
        let target = match images.first() {
            Some(p) => p.ctx.clone(),
            None => return Ok(Polynomial::from_terms(&self.field, &self.ctx, self.terms.clone())),
        };
        let f = &self.field;
        let mut out = Polynomial::zero(f, &target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(f, &target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[i])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Re-expresses the polynomial in a larger context whose variables
    /// include this one's as a block starting at `offset`.
    pub fn embed(&self, ctx: &Arc<PolyContext>, offset: usize) -> Polynomial<F> {
        Polynomial {
            field: self.field.clone(),
            ctx: ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embed(ctx.nvars(), offset), c.clone()))
                .collect(),
        }
    }

    /// Moves the polynomial into an equal-sized context with different
    /// names (e.g. after renaming).
    pub fn with_context(&self, ctx: &Arc<PolyContext>) -> Result<Polynomial<F>, PolyError> {
        if ctx.nvars() != self.ctx.nvars() {
            return Err(PolyError::ContextMismatch);
        }
        Ok(Polynomial {
            field: self.field.clone(),
            ctx: ctx.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Moves the polynomial to another field of the same characteristic
    /// story, mapping coefficients through `map`.
    pub fn map_coeffs<G: Field>(&self, field: &G, mut map: impl FnMut(&F::Elem) -> G::Elem) -> Polynomial<G> {
        let mut out = Polynomial::zero(field, &self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), map(c));
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Canonical form: terms in decreasing graded-lex order, `coef*mon`
    /// with unit coefficients omitted.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ctx.names();
        let terms = self.terms.iter().rev().map(|(m, c)| {
            let mon = if m.degree() == 0 {
                String::new()
            } else {
                m.format(names)
            };
            (c, mon)
        });
        write!(out, "{}", format_terms(&self.field, terms))
    }
}

/// Joins `(coefficient, monomial)` pairs as `c*m + ...`, omitting unit
/// coefficients; an empty monomial string is a constant term.
pub(crate) fn format_terms<'a, F: Field>(f: &F, terms: impl Iterator<Item = (&'a F::Elem, String)>) -> String {
    let mut out = String::new();
    for (k, (c, m)) in terms.enumerate() {
        let s = f.format(c);
        let (negative, mag) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&m);
        } else {
            out.push_str(&format!("{mag}*{m}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
