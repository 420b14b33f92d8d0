mod common;

use common::*;
use tacalc_core::algebra::GradedAlgebra;
use tacalc_core::quaddual::{
    coefficient_matrix, koszul_smoke, quadratic_dual, NcEnvelope, QuadDualError, QuadraticDual,
};
use tacalc_core::scalars::{Field, Matrix, PrimeField, RationalField};

type Q = RationalField;

fn parse(d: &QuadraticDual<Q>, text: &str) -> Vec<num_rational::BigRational> {
    let (deg, v) = d.parse_element(text).unwrap();
    assert_eq!(deg, 2);
    v
}

const S_PHI: [&str; 4] = [
    "T1*T2 + T2*T1",
    "T1*T3 + T3*T1 - 2*T2*T3 - 2*T3*T2",
    "T1*T4 + T4*T1 - T2*T4 - T4*T2",
    "T3^2 + T4^2 + T2*T5 + T5*T2",
];
const S_PHI5_PRINTED: &str = "T3^2 + T1*T5 + T5*T1 + T2*T5 + T5*T2";
/// The same relation as stated among the Lie brackets: 2 t3^(2) + t4^(2) = [t1, t5].
const S_PHI5_LIE: &str = "2*T3^2 + T4^2 - T1*T5 - T5*T1";

#[test]
fn small_coefficient_matrices() {
    let f = RationalField;
    let m = coefficient_matrix(&spec(&f, &["x"], &["x^2"])).unwrap();
    assert_eq!(m, Matrix::from_i64(&f, &[&[1]]));
    let m = coefficient_matrix(&spec(&f, &["x", "y"], &["x^2", "y^2"])).unwrap();
    assert_eq!(m, Matrix::from_i64(&f, &[&[1, 0, 0], &[0, 0, 1]]));
}

#[test]
fn coefficient_matrix_of_s() {
    let f = RationalField;
    let m = coefficient_matrix(&s_spec(&f)).unwrap();
    assert_eq!((m.rows(), m.cols()), (10, 15));
    assert_eq!(m.rank(), 10);
    // 2*X1*X3 + X2*X3: columns (1,3) and (2,3) in lex order over j <= l
    let row0: Vec<i64> = vec![0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0];
    assert_eq!(m.row(0), Matrix::from_i64(&f, &[&row0]).row(0));
}

#[test]
fn duals_of_small_algebras() {
    let f = RationalField;
    let d = quadratic_dual(&spec(&f, &["x"], &["x^2"])).unwrap();
    assert_eq!(d.relation_count(), 0);
    let d = quadratic_dual(&spec(&f, &["x", "y"], &["x^2", "y^2"])).unwrap();
    assert_eq!(d.relation_strings(), vec!["T1*T2 + T2*T1"]);
}

#[test]
fn dual_of_s_matches_listed_relations_up_to_one_misprint() {
    let f = RationalField;
    let d = quadratic_dual(&s_spec(&f)).unwrap();
    assert_eq!(d.relation_count(), 5);
    assert_eq!(d.relation_count(), 15 - d.coefficient_rank());
    for phi in S_PHI {
        assert!(d.span_contains(&parse(&d, phi)), "{phi}");
    }
    assert!(!d.span_contains(&parse(&d, S_PHI5_PRINTED)));
    assert!(d.span_contains(&parse(&d, S_PHI5_LIE)));
    let mut listed: Vec<_> = S_PHI.iter().map(|p| parse(&d, p)).collect();
    listed.push(parse(&d, S_PHI5_LIE));
    assert!(d.spans_equal(&listed));
}

#[test]
fn relations_round_trip_through_text() {
    let f = RationalField;
    let d = quadratic_dual(&s_spec(&f)).unwrap();
    for (s, v) in d.relation_strings().iter().zip(d.relations()) {
        assert_eq!(&parse(&d, s), v);
    }
}

#[test]
fn relation_counts_of_q_and_tensor() {
    let f = RationalField;
    let (n, m) = (5, 4);
    let dq = quadratic_dual(&q_spec(&f)).unwrap();
    assert_eq!(dq.relation_count(), 10 - 7);
    let ds = quadratic_dual(&s_spec(&f)).unwrap();
    let dr = quadratic_dual(&r_spec(&f)).unwrap();
    // alpha = (n+m)(n+m+1)/2 - (r+s) counted against beta + gamma + nm
    let alpha = (n + m) * (n + m + 1) / 2 - (10 + 7);
    assert_eq!(dr.relation_count(), alpha);
    assert_eq!(dr.relation_count(), ds.relation_count() + dq.relation_count() + n * m);
    for j in 1..=n {
        for l in 1..=m {
            let u = n + l;
            let cross = parse(&dr, &format!("T{j}*T{u} + T{u}*T{j}"));
            assert!(dr.span_contains(&cross));
        }
    }
}

#[test]
fn rejects_non_quadratic_and_characteristic_two() {
    let f = RationalField;
    let err = quadratic_dual(&spec(&f, &["x", "y"], &["x^2", "y^3"])).unwrap_err();
    assert_eq!(err, QuadDualError::NotQuadratic { index: 1, degree: 3 });
    let f2 = PrimeField::new(2).unwrap();
    assert_eq!(
        quadratic_dual(&spec(&f2, &["x"], &["x^2"])).unwrap_err(),
        QuadDualError::Characteristic2
    );
    let f3 = PrimeField::new(3).unwrap();
    assert!(quadratic_dual(&spec(&f3, &["x"], &["x^2"])).is_ok());
}

#[test]
fn free_algebra_on_one_generator() {
    let f = RationalField;
    let env = NcEnvelope::new(&f, 1, &[], 4).unwrap();
    assert_eq!(env.dims(), vec![1; 5]);
}

#[test]
fn anticommuting_pair_has_normal_words() {
    let f = RationalField;
    let d = quadratic_dual(&spec(&f, &["x", "y"], &["x^2", "y^2"])).unwrap();
    let env = d.envelope(4).unwrap();
    assert_eq!(env.dims(), vec![1, 2, 3, 4, 5]);
    // normal words T1^a T2^b
    assert_eq!(
        env.component(3).unwrap().basis_letters(),
        vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
    );
    // T2*T1 = -T1*T2
    let t1 = env.generator(0);
    let t2 = env.generator(1);
    let a = env.mul(1, &t2, 1, &t1).unwrap();
    let b = env.mul(1, &t1, 1, &t2).unwrap();
    assert_eq!(a, b.iter().map(|x| f.neg(x)).collect::<Vec<_>>());
    assert_eq!(env.format(2, &a).unwrap(), "-T1*T2");
}

#[test]
fn degree_cap_is_enforced() {
    let f = RationalField;
    let d = quadratic_dual(&spec(&f, &["x"], &["x^2"])).unwrap();
    assert!(matches!(
        d.envelope(5),
        Err(QuadDualError::DegreeCap { requested: 5, cap: 4 })
    ));
    let env = d.envelope(2).unwrap();
    assert!(env.mul(1, &env.generator(0), 2, &[f.one()]).is_err());
}

#[test]
fn dual_components_of_s_match_betti_numbers() {
    let f = RationalField;
    let d = quadratic_dual(&s_spec(&f)).unwrap();
    let env = d.envelope(4).unwrap();
    assert_eq!(env.dims(), vec![1, 5, 20, 76, 285]);
    assert_eq!(env.dims()[2], 25 - d.relation_count());
}

#[test]
fn koszul_smoke_passes_on_corpus() {
    let f = RationalField;
    for (s, betti) in [
        (s_spec(&f), vec![1, 5, 20, 76]),
        (q_spec(&f), vec![1, 4, 13, 40]),
        (spec(&f, &["x", "y"], &["x^2", "y^2"]), vec![1, 2, 3, 4]),
    ] {
        let a = GradedAlgebra::build(&s, 12).unwrap();
        let d = quadratic_dual(&s).unwrap();
        let k = koszul_smoke(&a, &d, 3, 10).unwrap();
        assert!(k.consistent());
        assert_eq!(k.betti, betti);
        assert_eq!(k.dual_dims, betti);
    }
}

#[test]
fn koszul_smoke_on_r_over_prime_field() {
    let f = PrimeField::new(32003).unwrap();
    let s = r_spec(&f);
    let a = GradedAlgebra::build(&s, 12).unwrap();
    let d = quadratic_dual(&s).unwrap();
    let k = koszul_smoke(&a, &d, 3, 10).unwrap();
    assert!(k.consistent());
    assert_eq!(k.dual_dims, vec![1, 9, 53, 261]);
}

#[test]
fn dual_components_of_r_over_rationals() {
    let f = RationalField;
    let d = quadratic_dual(&r_spec(&f)).unwrap();
    assert_eq!(d.envelope(3).unwrap().dims(), vec![1, 9, 53, 261]);
}

#[test]
fn non_koszul_algebra_is_flagged() {
    let f = RationalField;
    let s = spec(&f, &["x", "y", "z", "w"], &["x^2", "y^2", "z^2", "w^2", "x*y + z*w"]);
    let a = GradedAlgebra::build(&s, 12).unwrap();
    let d = quadratic_dual(&s).unwrap();
    let k = koszul_smoke(&a, &d, 3, 10).unwrap();
    assert!(!k.consistent());
    assert!(!k.linear);
    assert_eq!(k.first_mismatch, Some(3));
    assert_eq!((k.betti[3], k.dual_dims[3]), (29, 24));
}

#[test]
fn double_dual_recovers_the_hilbert_function() {
    let f = RationalField;
    for s in [
        spec(&f, &["x", "y"], &["x^2", "y^2"]),
        spec(&f, &["x", "y", "z"], &["x^2", "x*y", "y*z", "z^2", "y^2"]),
        s_spec(&f),
    ] {
        let a = GradedAlgebra::build(&s, 12).unwrap();
        let d = quadratic_dual(&s).unwrap();
        let back = NcEnvelope::new(&f, s.nvars(), &d.orthogonal_relations(), 4).unwrap();
        let mut h = a.hilbert();
        h.resize(5, 0);
        assert_eq!(back.dims(), h);
    }
}
