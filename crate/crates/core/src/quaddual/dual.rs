use num_rational::BigRational;

use crate::algebra::AlgebraSpec;
use crate::polyring::{format_terms, parse_terms};
use crate::scalars::{EchelonBasis, Field, Matrix};

use super::envelope::NcEnvelope;
use super::QuadDualError;

/// Commutative degree-2 monomials `x_j x_l`, `j <= l`, in lexicographic order.
pub fn pair_columns(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (j..n).map(move |l| (j, l))).collect()
}

fn check_input<F: Field>(spec: &AlgebraSpec<F>) -> Result<(), QuadDualError> {
    if spec.field().characteristic() == 2 {
        return Err(QuadDualError::Characteristic2);
    }
    for (index, r) in spec.relations().iter().enumerate() {
        let degree = r.degree().unwrap_or(0) as usize;
        if degree != 2 {
            return Err(QuadDualError::NotQuadratic { index, degree });
        }
    }
    Ok(())
}

/// `a_{ijl}`: coefficient of `x_j x_l` in relation `i`, one row per
/// relation, columns as in [`pair_columns`].
pub fn coefficient_matrix<F: Field>(spec: &AlgebraSpec<F>) -> Result<Matrix<F>, QuadDualError> {
    check_input(spec)?;
    let f = spec.field();
    let n = spec.nvars();
    let pairs = pair_columns(n);
    let mut m = Matrix::zeros(f, spec.relations().len(), pairs.len());
    for (i, r) in spec.relations().iter().enumerate() {
        for (mono, c) in r.terms() {
            let mut vars = Vec::with_capacity(2);
            for (k, &e) in mono.0.iter().enumerate() {
                vars.extend(std::iter::repeat_n(k, e as usize));
            }
            let col = pairs.binary_search(&(vars[0], vars[1])).expect("degree-two monomial");
            m.set(i, col, c.clone());
        }
    }
    Ok(m)
}

/// The quadratic dual `k<T_1..T_n>/(φ_1..φ_s)` of a commutative quadratic
/// algebra, with `φ_i = Σ_{j<=l} c_{ijl} [T_j, T_l]`, `c_i` running over a
/// nullspace basis of the coefficient matrix, `[T_j, T_l] = T_jT_l + T_lT_j`
/// for `j < l` and `[T_j, T_j]` read as `T_j^2`.
///
/// Relations are stored as vectors over the `n^2` words `T_jT_l`, word
/// `(j, l)` at index `j*n + l`.
#[derive(Debug, Clone)]
pub struct QuadraticDual<F: Field> {
    field: F,
    names: Vec<String>,
    coefficients: Matrix<F>,
    nullspace: Vec<Vec<F::Elem>>,
    relations: Vec<Vec<F::Elem>>,
}

pub fn quadratic_dual<F: Field>(spec: &AlgebraSpec<F>) -> Result<QuadraticDual<F>, QuadDualError> {
    let coefficients = coefficient_matrix(spec)?;
    let f = spec.field();
    let n = spec.nvars();
    let pairs = pair_columns(n);
    let nullspace = coefficients.nullspace_basis();
    let relations = nullspace
        .iter()
        .map(|c| {
            let mut phi = vec![f.zero(); n * n];
            for (&(j, l), x) in pairs.iter().zip(c) {
                phi[j * n + l] = f.add(&phi[j * n + l], x);
                if j != l {
                    phi[l * n + j] = f.add(&phi[l * n + j], x);
                }
            }
            phi
        })
        .collect();
    Ok(QuadraticDual {
        field: f.clone(),
        names: (1..=n).map(|i| format!("T{i}")).collect(),
        coefficients,
        nullspace,
        relations,
    })
}

impl<F: Field> QuadraticDual<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coefficient_matrix(&self) -> &Matrix<F> {
        &self.coefficients
    }

    pub fn coefficient_rank(&self) -> usize {
        self.coefficients.rank()
    }

    pub fn nullspace(&self) -> &[Vec<F::Elem>] {
        &self.nullspace
    }

    pub fn relations(&self) -> &[Vec<F::Elem>] {
        &self.relations
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| format_nc(&self.field, &self.names, 2, r))
            .collect()
    }

    fn relation_span(&self) -> EchelonBasis<F> {
        let n = self.nvars();
        let mut e = EchelonBasis::new(&self.field, n * n);
        e.extend(self.relations.clone(), None);
        e
    }

    pub fn span_contains(&self, v: &[F::Elem]) -> bool {
        self.relation_span().contains(v)
    }

    /// The given degree-2 elements span exactly the relation space.
    pub fn spans_equal(&self, others: &[Vec<F::Elem>]) -> bool {
        let span = self.relation_span();
        let mut theirs = EchelonBasis::new(&self.field, self.nvars() * self.nvars());
        theirs.extend(others.to_vec(), None);
        theirs.rank() == span.rank() && others.iter().all(|v| span.contains(v))
    }

    /// Parses a homogeneous noncommutative element in `T1..Tn`, returning
    /// its degree and coordinates over the `n^d` words.
    pub fn parse_element(&self, text: &str) -> Result<(usize, Vec<F::Elem>), QuadDualError> {
        parse_nc(&self.field, &self.names, text)
    }

    /// Orthogonal complement of the relation space under the word pairing;
    /// presents the quadratic dual of the dual.
    pub fn orthogonal_relations(&self) -> Vec<Vec<F::Elem>> {
        let n = self.nvars();
        Matrix::from_rows(&self.field, n * n, self.relations.clone())
            .expect("relation length")
            .nullspace_basis()
    }

    pub fn envelope(&self, max_degree: usize) -> Result<NcEnvelope<F>, QuadDualError> {
        NcEnvelope::new(&self.field, self.nvars(), &self.relations, max_degree)
    }
}

/// Letters of word number `w` of length `d` over `n` letters.
pub fn word_letters(n: usize, d: usize, mut w: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for k in (0..d).rev() {
        out[k] = w % n;
        w /= n;
    }
    out
}

pub fn word_number(n: usize, letters: &[usize]) -> usize {
    letters.iter().fold(0, |acc, &l| acc * n + l)
}

/// `T1*T3^2`-style rendering; the empty word is `1`.
pub fn format_word(names: &[String], letters: &[usize]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < letters.len() {
        let mut run = 1;
        while k + run < letters.len() && letters[k + run] == letters[k] {
            run += 1;
        }
        let name = &names[letters[k]];
        parts.push(if run == 1 {
            name.clone()
        } else {
            format!("{name}^{run}")
        });
        k += run;
    }
    parts.join("*")
}

/// Renders a vector over the degree-`d` words, words in increasing order.
pub fn format_nc<F: Field>(field: &F, names: &[String], d: usize, v: &[F::Elem]) -> String {
    let n = names.len();
    let terms = v.iter().enumerate().filter(|(_, x)| !field.is_zero(x)).map(|(w, x)| {
        (
            x,
            if d == 0 {
                String::new()
            } else {
                format_word(names, &word_letters(n, d, w))
            },
        )
    });
    format_terms(field, terms)
}

pub fn parse_nc<F: Field>(field: &F, names: &[String], text: &str) -> Result<(usize, Vec<F::Elem>), QuadDualError> {
    let n = names.len();
    let terms: Vec<(BigRational, Vec<(usize, u32)>)> = parse_terms(text, |s| names.iter().position(|x| x == s))?;
    let mut degree = None;
    let mut words = Vec::with_capacity(terms.len());
    for (coef, factors) in terms {
        let letters: Vec<usize> = factors
            .into_iter()
            .flat_map(|(v, e)| std::iter::repeat_n(v, e as usize))
            .collect();
        if degree.is_some_and(|d| d != letters.len()) {
            return Err(QuadDualError::Inhomogeneous);
        }
        degree = Some(letters.len());
        let c = field
            .from_rational(&coef)
            .map_err(|e| QuadDualError::Parse(crate::polyring::PolyError::Coefficient(e.to_string())))?;
        words.push((word_number(n, &letters), c));
    }
    let d = degree.unwrap_or(0);
    let size = n.checked_pow(d as u32).ok_or(QuadDualError::Inhomogeneous)?;
    let mut v = vec![field.zero(); size];
    for (w, c) in words {
        v[w] = field.add(&v[w], &c);
    }
    Ok((d, v))
}
