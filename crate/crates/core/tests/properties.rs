mod common;

use common::spec;
use proptest::prelude::*;
use tacalc_core::algebra::{AlgebraSpec, GradedAlgebra};
use tacalc_core::homology::{minimal_resolution, series_product, Presentation, DEFAULT_INT_CAP};
use tacalc_core::homotopylie::{HomotopyLie, LieOptions};
use tacalc_core::polyring::{pfaffian, submax_pfaffians, Monomial, PolyContext, Polynomial, SkewMatrix};
use tacalc_core::quaddual::quadratic_dual;
use tacalc_core::scalars::{Field, Matrix, Parallelism, PrimeField, RationalField, DEFAULT_PRIME};

type Q = RationalField;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

fn small_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

fn to_matrix<F: Field>(f: &F, rows: &[Vec<i64>]) -> Matrix<F> {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(f, &refs)
}

/// Quadratic algebra on `x1..xn` containing every square, a chosen set of
/// mixed monomials and optionally one mixed binomial-type relation.
#[derive(Debug, Clone)]
struct RandomAlgebra {
    n: usize,
    mixed: Vec<bool>,
    extra: Vec<i64>,
}

impl RandomAlgebra {
    fn pairs(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    }

    fn relations(&self, prefix: &str) -> Vec<String> {
        let v = |i: usize| format!("{prefix}{}", i + 1);
        let mut rels: Vec<String> = (0..self.n).map(|i| format!("{}^2", v(i))).collect();
        let pairs = Self::pairs(self.n);
        for (&(i, j), &on) in pairs.iter().zip(&self.mixed) {
            if on {
                rels.push(format!("{}*{}", v(i), v(j)));
            }
        }
        let terms: Vec<String> = pairs
            .iter()
            .zip(&self.extra)
            .filter(|(_, &c)| c != 0)
            .map(|(&(i, j), c)| format!("{c}*{}*{}", v(i), v(j)))
            .collect();
        if !terms.is_empty() {
            rels.push(terms.join(" + ").replace("+ -", "- "));
        }
        rels
    }

    fn spec<F: Field>(&self, f: &F, prefix: &str) -> AlgebraSpec<F> {
        let names: Vec<String> = (1..=self.n).map(|i| format!("{prefix}{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let rels = self.relations(prefix);
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        spec(f, &names, &rels)
    }
}

fn random_algebra(max_n: usize, with_extra: bool) -> impl Strategy<Value = RandomAlgebra> {
    (2..=max_n).prop_flat_map(move |n| {
        let m = n * (n - 1) / 2;
        let extra = if with_extra {
            prop::collection::vec(-2i64..=2, m).boxed()
        } else {
            Just(vec![0; m]).boxed()
        };
        (Just(n), prop::collection::vec(any::<bool>(), m), extra).prop_map(|(n, mixed, extra)| RandomAlgebra {
            n,
            mixed,
            extra,
        })
    })
}

fn residue_betti<F: Field>(spec: &AlgebraSpec<F>, hom: usize) -> Vec<usize> {
    let alg = GradedAlgebra::build(spec, 12).unwrap();
    let res = minimal_resolution(&alg, &Presentation::residue_field(&alg), hom, DEFAULT_INT_CAP).unwrap();
    let mut b = res.betti();
    b.resize(hom + 1, 0);
    b
}

fn random_poly(field: &Q, ctx: &std::sync::Arc<PolyContext>, terms: &[(u8, u8, u8, i64)]) -> Polynomial<Q> {
    Polynomial::from_terms(
        field,
        ctx,
        terms
            .iter()
            .map(|&(a, b, c, k)| (Monomial(vec![a as u32, b as u32, c as u32]), field.from_i64(k))),
    )
}

fn poly_terms() -> impl Strategy<Value = Vec<(u8, u8, u8, i64)>> {
    prop::collection::vec((0u8..3, 0u8..3, 0u8..3, -4i64..=4), 0..5)
}

/// Degree together with terms all of that degree.
fn homogeneous_terms() -> impl Strategy<Value = (u8, Vec<(u8, u8, u8, i64)>)> {
    (0u8..4).prop_flat_map(|d| {
        let term = (0..=d, 0..=d, 1i64..=4).prop_map(move |(a, b, k)| {
            let a = a.min(d);
            let b = b.min(d - a);
            (a, b, d - a - b, k)
        });
        (Just(d), prop::collection::vec(term, 1..5))
    })
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn rref_is_idempotent(rows in small_matrix(6, 6, 5)) {
        let m = to_matrix(&RationalField, &rows);
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn rank_plus_nullity_is_column_count(rows in small_matrix(6, 7, 5)) {
        let f = RationalField;
        let m = to_matrix(&f, &rows);
        let null = m.nullspace_basis();
        prop_assert_eq!(m.rank() + null.len(), m.cols());
        for v in &null {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| f.is_zero(x)));
        }
    }

    // Entries bounded by 3 and at most 5 rows keep every minor below the
    // default prime, so the two ranks must agree.
    #[test]
    fn rational_and_prime_ranks_agree(rows in small_matrix(5, 7, 3)) {
        let p = PrimeField::new(DEFAULT_PRIME).unwrap();
        prop_assert_eq!(to_matrix(&RationalField, &rows).rank(), to_matrix(&p, &rows).rank());
    }

    #[test]
    fn sequential_and_parallel_rref_agree(rows in small_matrix(8, 8, 9)) {
        let m = to_matrix(&RationalField, &rows);
        let a = m.rref_with(Parallelism::Sequential);
        let b = m.rref_with(Parallelism::Parallel);
        prop_assert_eq!(a.matrix, b.matrix);
        prop_assert_eq!(a.pivots, b.pivots);
    }

    #[test]
    fn polynomial_ring_axioms(a in poly_terms(), b in poly_terms(), c in poly_terms()) {
        let f = RationalField;
        let ctx = PolyContext::new(["x", "y", "z"]).unwrap();
        let (p, q, r) = (random_poly(&f, &ctx, &a), random_poly(&f, &ctx, &b), random_poly(&f, &ctx, &c));
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
        );
    }

    #[test]
    fn homogeneous_degrees_add(a in homogeneous_terms(), b in homogeneous_terms()) {
        let f = RationalField;
        let ctx = PolyContext::new(["x", "y", "z"]).unwrap();
        let p = random_poly(&f, &ctx, &a.1);
        let q = random_poly(&f, &ctx, &b.1);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let pq = p.mul(&q).unwrap();
        prop_assert!(pq.is_homogeneous());
        prop_assert_eq!(pq.degree(), Some(a.0 as u32 + b.0 as u32));
    }

    #[test]
    fn pfaffian_squares_to_determinant(size in prop::sample::select(vec![2usize, 4, 6]), seed in prop::collection::vec(-5i64..=5, 15)) {
        let f = RationalField;
        let a = SkewMatrix::generic(&f, size);
        let point: Vec<_> = seed[..a.context().nvars()].iter().map(|&x| f.from_i64(x)).collect();
        let pf = pfaffian(&a).evaluate(&point);
        let rows: Vec<Vec<_>> = a.to_rows().iter().map(|r| r.iter().map(|p| p.evaluate(&point)).collect()).collect();
        let det = Matrix::from_rows(&f, size, rows).unwrap().det().unwrap();
        prop_assert_eq!(f.mul(&pf, &pf), det);
    }

    #[test]
    fn submaximal_pfaffians_are_annihilated(size in prop::sample::select(vec![3usize, 5, 7]), seed in prop::collection::vec(-5i64..=5, 21)) {
        let f = RationalField;
        let a = SkewMatrix::generic(&f, size);
        let point: Vec<_> = seed[..a.context().nvars()].iter().map(|&x| f.from_i64(x)).collect();
        let s: Vec<_> = submax_pfaffians(&a).unwrap().iter().map(|p| p.evaluate(&point)).collect();
        for i in 0..size {
            let mut acc = f.zero();
            for (j, sj) in s.iter().enumerate() {
                acc = f.add(&acc, &f.mul(&a.entry(i, j).evaluate(&point), sj));
            }
            prop_assert!(f.is_zero(&acc));
        }
    }

    #[test]
    fn hilbert_and_socle_multiply_under_tensor(a in random_algebra(3, true), b in random_algebra(3, true)) {
        let f = RationalField;
        let (sa, sb) = (a.spec(&f, "x"), b.spec(&f, "y"));
        let ga = GradedAlgebra::build(&sa, 12).unwrap();
        let gb = GradedAlgebra::build(&sb, 12).unwrap();
        let gab = GradedAlgebra::build(&sa.tensor(&sb).unwrap(), 12).unwrap();
        let len = gab.hilbert().len();
        prop_assert_eq!(gab.hilbert(), series_product(&ga.hilbert(), &gb.hilbert(), len));
        prop_assert_eq!(gab.socle().dim, ga.socle().dim * gb.socle().dim);
        prop_assert_eq!(gab.socle().gorenstein, ga.socle().gorenstein && gb.socle().gorenstein);
    }

    #[test]
    fn normal_form_is_multiplicative(a in random_algebra(3, true), p in poly_terms(), q in poly_terms(), dp in 0u8..3, dq in 0u8..3) {
        let f = RationalField;
        prop_assume!(a.n == 3);
        let alg = GradedAlgebra::build(&a.spec(&f, "x"), 12).unwrap();
        let ctx = alg.spec().context().clone();
        let keep = |t: &[(u8, u8, u8, i64)], d: u8| -> Vec<(u8, u8, u8, i64)> {
            t.iter().copied().filter(|&(x, y, z, _)| x + y + z == d).collect()
        };
        let p = random_poly(&f, &ctx, &keep(&p, dp));
        let q = random_poly(&f, &ctx, &keep(&q, dq));
        let (dp, dq) = (dp as usize, dq as usize);
        let pq = alg.nf_in_degree(&p.mul(&q).unwrap(), dp + dq);
        let prod = alg.mul(dp, &alg.nf_in_degree(&p, dp), dq, &alg.nf_in_degree(&q, dq));
        prop_assert_eq!(pq, prod);
    }

    #[test]
    fn hilbert_plus_relation_rank_counts_monomials(a in random_algebra(4, true)) {
        let alg = GradedAlgebra::build(&a.spec(&RationalField, "x"), 12).unwrap();
        for d in 0..alg.relation_ranks().len() {
            let monos = Monomial::all_of_degree(a.n, d as u32).len();
            prop_assert_eq!(alg.dim(d) + alg.relation_ranks()[d], monos);
        }
    }

    #[test]
    fn resolutions_are_minimal_exact_complexes(a in random_algebra(3, true)) {
        let alg = GradedAlgebra::build(&a.spec(&RationalField, "x"), 12).unwrap();
        let res = minimal_resolution(&alg, &Presentation::residue_field(&alg), 3, DEFAULT_INT_CAP).unwrap();
        prop_assert!(res.is_complex(&alg));
        prop_assert!(res.is_minimal(&alg));
        prop_assert!(res.is_exact(&alg));
    }

    #[test]
    fn betti_numbers_ignore_variable_and_relation_order(a in random_algebra(3, true), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let f = RationalField;
        let s = a.spec(&f, "x");
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < a.n).collect();
        let permuted = s.permute_vars(&perm).unwrap();
        let mut rels = s.relations().to_vec();
        rels.reverse();
        let reordered = AlgebraSpec::new(&f, s.context(), rels).unwrap();
        let b = residue_betti(&s, 3);
        prop_assert_eq!(&residue_betti(&permuted, 3), &b);
        prop_assert_eq!(&residue_betti(&reordered, 3), &b);
    }

    #[test]
    fn poincare_series_multiply_under_tensor(a in random_algebra(2, true), b in random_algebra(3, true)) {
        let f = RationalField;
        let (sa, sb) = (a.spec(&f, "x"), b.spec(&f, "y"));
        let ab = residue_betti(&sa.tensor(&sb).unwrap(), 3);
        prop_assert_eq!(ab, series_product(&residue_betti(&sa, 3), &residue_betti(&sb, 3), 4));
    }

    #[test]
    fn quadratic_dual_counts(a in random_algebra(4, true)) {
        let f = RationalField;
        let s = a.spec(&f, "x");
        let dual = quadratic_dual(&s).unwrap();
        let n = a.n;
        prop_assert_eq!(dual.relation_count(), n * (n + 1) / 2 - dual.coefficient_rank());
        let env = dual.envelope(2).unwrap();
        prop_assert_eq!(env.dims()[2], n * n - dual.relation_count());
    }

    // Quadratic monomial algebras are Koszul, so the Lie data is defined.
    #[test]
    fn center_is_invariant_under_relation_and_variable_changes(
        a in random_algebra(3, false),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        mix in prop::collection::vec(-2i64..=2, 64),
    ) {
        let f = RationalField;
        let s = a.spec(&f, "x");
        let center = |spec: &AlgebraSpec<Q>| {
            let alg = GradedAlgebra::build(spec, 12).unwrap();
            let lie = HomotopyLie::compute(&alg, LieOptions::default()).unwrap();
            let (u3, pbw) = lie.pbw_degree3();
            assert_eq!(u3, pbw);
            lie.center().unwrap().dim()
        };
        let base = center(&s);
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < a.n).collect();
        prop_assert_eq!(center(&s.permute_vars(&perm).unwrap()), base);
        // unit lower-triangular change of the relation list
        let rels = s.relations();
        let mut k = 0;
        let mut mixed = Vec::with_capacity(rels.len());
        for (i, r) in rels.iter().enumerate() {
            let mut acc = r.clone();
            for earlier in &rels[..i] {
                acc = acc.add(&earlier.scale(&f.from_i64(mix[k % mix.len()]))).unwrap();
                k += 1;
            }
            mixed.push(acc);
        }
        prop_assert_eq!(center(&AlgebraSpec::new(&f, s.context(), mixed).unwrap()), base);
    }
}
