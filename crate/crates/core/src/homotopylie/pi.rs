use crate::algebra::GradedAlgebra;
use crate::homology::{binom, deviations, DEFAULT_INT_CAP};
use crate::quaddual::{compare_dims, quadratic_dual, KoszulSmoke, NcEnvelope, QuadraticDual};
use crate::scalars::{map_range, parallelism, EchelonBasis, Field, Matrix};

use super::HomotopyError;

/// How a basis element of `π²` or `π³` was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiLabel {
    /// Class of `T_j^2`, standing for the divided square `t_j^(2)`.
    Square(usize),
    /// `[t_i, t_j] = T_iT_j + T_jT_i`, `i < j`.
    Bracket(usize, usize),
    /// `[u_k, t_j] = u_k T_j - T_j u_k` for the `k`-th basis element of `π²`.
    Commutator(usize, usize),
}

/// A basis of `π^d` as vectors of `U_d` (normal-word coordinates).
#[derive(Debug, Clone, PartialEq)]
pub struct PiComponent<F: Field> {
    pub degree: usize,
    pub basis: Vec<Vec<F::Elem>>,
    pub labels: Vec<PiLabel>,
}

impl<F: Field> PiComponent<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn select(degree: usize, field: &F, dim: usize, candidates: Vec<(PiLabel, Vec<F::Elem>)>) -> Self {
        let mut ech = EchelonBasis::new(field, dim);
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for (label, v) in candidates {
            if ech.insert(v.clone()) {
                basis.push(v);
                labels.push(label);
            }
        }
        PiComponent { degree, basis, labels }
    }
}

/// Span in `U_2` of the squares `T_j^2` and symmetric products
/// `T_iT_j + T_jT_i`, taken greedily in that order.
pub fn pi2<F: Field>(env: &NcEnvelope<F>) -> Result<PiComponent<F>, HomotopyError> {
    let f = env.field();
    let n = env.nvars();
    let gens: Vec<Vec<F::Elem>> = (0..n).map(|j| env.generator(j)).collect();
    let mut candidates = Vec::new();
    for j in 0..n {
        candidates.push((PiLabel::Square(j), env.mul(1, &gens[j], 1, &gens[j])?));
    }
    for i in 0..n {
        for j in i + 1..n {
            let a = env.mul(1, &gens[i], 1, &gens[j])?;
            let b = env.mul(1, &gens[j], 1, &gens[i])?;
            let s = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
            candidates.push((PiLabel::Bracket(i, j), s));
        }
    }
    Ok(PiComponent::select(2, f, env.component(2)?.dim(), candidates))
}

/// `[u, t_j] = u T_j - T_j u` in `U_3` for `u ∈ U_2`.
pub fn bracket_with_generator<F: Field>(
    env: &NcEnvelope<F>,
    u: &[F::Elem],
    j: usize,
) -> Result<Vec<F::Elem>, HomotopyError> {
    let f = env.field();
    let t = env.generator(j);
    let right = env.mul(2, u, 1, &t)?;
    let left = env.mul(1, &t, 2, u)?;
    Ok(right.iter().zip(&left).map(|(a, b)| f.sub(a, b)).collect())
}

/// Span in `U_3` of `[u, t_j]` over a basis of `π²` and all generators,
/// taken greedily generator by generator.
pub fn pi3<F: Field>(env: &NcEnvelope<F>, pi2: &PiComponent<F>) -> Result<PiComponent<F>, HomotopyError> {
    let n = env.nvars();
    let mut candidates = Vec::new();
    for j in 0..n {
        for (k, u) in pi2.basis.iter().enumerate() {
            candidates.push((PiLabel::Commutator(k, j), bracket_with_generator(env, u, j)?));
        }
    }
    Ok(PiComponent::select(3, env.field(), env.component(3)?.dim(), candidates))
}

/// `{u ∈ π² : [u, t_j] = 0 for all j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Center<F: Field> {
    /// Coefficient vectors over the `π²` basis.
    pub coefficients: Vec<Vec<F::Elem>>,
    /// The same elements in `U_2`.
    pub elements: Vec<Vec<F::Elem>>,
}

impl<F: Field> Center<F> {
    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }
}

/// Columns `([u_k, t_1], ..., [u_k, t_n])` of the centrality map, one per
/// basis element of `π²`.
pub(crate) fn centrality_columns<F: Field>(
    env: &NcEnvelope<F>,
    pi2: &PiComponent<F>,
) -> Result<Vec<Vec<F::Elem>>, HomotopyError> {
    let n = env.nvars();
    let blocks = map_range(n, parallelism(), |j| {
        pi2.basis
            .iter()
            .map(|u| bracket_with_generator(env, u, j))
            .collect::<Result<Vec<_>, _>>()
    });
    let blocks = blocks.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok((0..pi2.dim())
        .map(|k| blocks.iter().flat_map(|b| b[k].iter().cloned()).collect())
        .collect())
}

/// Kernel of `π² -> U_3^n`, `u ↦ ([u, t_1], ..., [u, t_n])`.
pub fn central_pi2<F: Field>(env: &NcEnvelope<F>, pi2: &PiComponent<F>) -> Result<Center<F>, HomotopyError> {
    let f = env.field();
    let cols = centrality_columns(env, pi2)?;
    let rows = env.nvars() * env.component(3)?.dim();
    let coefficients = Matrix::from_columns(f, rows, &cols).nullspace_basis();
    let dim2 = env.component(2)?.dim();
    let elements = coefficients
        .iter()
        .map(|a| {
            let mut e = vec![f.zero(); dim2];
            for (x, u) in a.iter().zip(&pi2.basis) {
                f.sub_mul_assign(&mut e, &f.neg(x), u);
            }
            e
        })
        .collect();
    Ok(Center { coefficients, elements })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LieOptions {
    pub int_cap: i32,
    /// Proceed even if the Koszul comparison fails.
    pub allow_non_koszul: bool,
}

impl Default for LieOptions {
    fn default() -> Self {
        LieOptions {
            int_cap: DEFAULT_INT_CAP,
            allow_non_koszul: false,
        }
    }
}

/// `π¹..π³` of a quadratic algebra with the cross-checks that justify
/// reading them inside the dual: `b_i = dim U_i` for `i <= 3`,
/// `dim π² = ε_2`, `dim π³ = ε_3`.
#[derive(Debug, Clone)]
pub struct HomotopyLie<F: Field> {
    pub dual: QuadraticDual<F>,
    pub envelope: NcEnvelope<F>,
    pub smoke: KoszulSmoke,
    pub deviations: [i64; 3],
    pub pi2: PiComponent<F>,
    pub pi3: PiComponent<F>,
    /// The field has characteristic 3, where divided powers need care.
    pub characteristic_three: bool,
}

impl<F: Field> HomotopyLie<F> {
    pub fn compute(alg: &GradedAlgebra<F>, opts: LieOptions) -> Result<Self, HomotopyError> {
        let field = alg.field();
        if field.characteristic() == 2 {
            return Err(HomotopyError::Characteristic2);
        }
        let dual = quadratic_dual(alg.spec())?;
        let envelope = dual.envelope(3)?;
        let res = crate::homology::minimal_resolution(
            alg,
            &crate::homology::Presentation::residue_field(alg),
            3,
            opts.int_cap,
        )?;
        let mut betti = res.betti();
        betti.resize(4, 0);
        let smoke = compare_dims(&betti, &envelope.dims(), res.is_linear());
        if !smoke.consistent() && !opts.allow_non_koszul {
            return Err(HomotopyError::NotKoszul {
                degree: smoke.first_mismatch.unwrap_or(0),
            });
        }
        let deviations = deviations(&betti)?;
        let pi2 = pi2(&envelope)?;
        if pi2.dim() as i64 != deviations[1] {
            return Err(HomotopyError::PbwFailure {
                degree: 2,
                expected: deviations[1],
                found: pi2.dim() as i64,
            });
        }
        let pi3 = pi3(&envelope, &pi2)?;
        if pi3.dim() as i64 != deviations[2] {
            return Err(HomotopyError::PbwFailure {
                degree: 3,
                expected: deviations[2],
                found: pi3.dim() as i64,
            });
        }
        let lie = HomotopyLie {
            characteristic_three: field.characteristic() == 3,
            dual,
            envelope,
            smoke,
            deviations,
            pi2,
            pi3,
        };
        let (lhs, rhs) = lie.pbw_degree3();
        if lhs != rhs {
            return Err(HomotopyError::PbwFailure {
                degree: 3,
                expected: lhs,
                found: rhs,
            });
        }
        Ok(lie)
    }

    pub fn betti(&self) -> &[usize] {
        &self.smoke.betti
    }

    /// `(dim U_3, C(ε_1,3) + ε_1 ε_2 + ε_3)`.
    pub fn pbw_degree3(&self) -> (i64, i64) {
        let [e1, e2, e3] = self.deviations;
        let u3 = self.envelope.dims()[3] as i64;
        (u3, binom(e1, 3) + e1 * e2 + e3)
    }

    pub fn bracket(&self, u: &[F::Elem], j: usize) -> Result<Vec<F::Elem>, HomotopyError> {
        bracket_with_generator(&self.envelope, u, j)
    }

    pub fn center(&self) -> Result<Center<F>, HomotopyError> {
        central_pi2(&self.envelope, &self.pi2)
    }

    /// Rank of the centrality map restricted to the span of the chosen
    /// `π²` basis elements.
    pub fn centrality_rank_on(&self, indices: &[usize]) -> Result<usize, HomotopyError> {
        let cols = centrality_columns(&self.envelope, &self.pi2)?;
        let rows = self.envelope.nvars() * self.envelope.component(3)?.dim();
        let picked: Vec<Vec<F::Elem>> = indices.iter().map(|&k| cols[k].clone()).collect();
        Ok(Matrix::from_columns(self.envelope.field(), rows, &picked).rank())
    }
}
