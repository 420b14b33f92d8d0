mod common;

use common::spec;
use tacalc_core::algebra::GradedAlgebra;
use tacalc_core::homology::{FreeModule, ModuleMap, Presentation};
use tacalc_core::polyring::parse_poly;
use tacalc_core::scalars::{Field, RationalField};
use tacalc_core::totalacyclicity::{
    base_change, totally_reflexive_certified, totally_reflexive_check, ComplexError, FreeComplex, TotalVerdict,
    VerdictScope,
};

type Q = RationalField;

fn algebra(vars: &[&str], rels: &[&str]) -> GradedAlgebra<Q> {
    GradedAlgebra::build(&spec(&RationalField, vars, rels), 12).unwrap()
}

fn hypersurface() -> GradedAlgebra<Q> {
    algebra(&["x"], &["x^2"])
}

fn square_zero() -> GradedAlgebra<Q> {
    algebra(&["x", "y"], &["x^2", "x*y", "y^2"])
}

/// 1x1 map `A(-(t+e)) -> A(-t)` given by a polynomial of degree `e`.
fn scalar_map<F: Field>(alg: &GradedAlgebra<F>, entry: &str, t: i32, e: i32) -> ModuleMap<F> {
    let p = parse_poly(alg.field(), alg.spec().context(), entry).unwrap();
    ModuleMap::from_polys(alg, FreeModule::new(vec![t + e]), FreeModule::new(vec![t]), &[vec![p]]).unwrap()
}

/// `... -> A(-2) -x-> A(-1) -x-> A -> ...` repeated in both directions.
fn multiplication_by<F: Field>(alg: &GradedAlgebra<F>, entry: &str, e: i32) -> FreeComplex<F> {
    FreeComplex::new(1, vec![scalar_map(alg, entry, 0, e)], Some(1)).unwrap()
}

#[test]
fn hypersurface_complex_is_minimal_and_totally_acyclic() {
    let a = hypersurface();
    let c = multiplication_by(&a, "x", 1);
    assert_eq!(c.period().unwrap().shift, 1);
    let chk = c.check(&a);
    assert!(chk.is_complex && chk.is_minimal);
    let acyc = c.acyclicity(&a).unwrap();
    assert!(acyc.is_exact());
    assert!(!acyc.window_only);
    let t = c.total_acyclicity(&a).unwrap();
    assert_eq!(t.verdict, TotalVerdict::TotallyAcyclic);
    assert!(t.minimal && t.nontrivial);
}

#[test]
fn unrolled_differentials_carry_the_degree_shift() {
    let a = hypersurface();
    let c = multiplication_by(&a, "x", 1);
    for i in -3..4 {
        let d = c.differential(i).unwrap();
        assert_eq!(d.source().degrees(), &[i]);
        assert_eq!(d.target().degrees(), &[i - 1]);
        assert_eq!(d.entry_poly(&a, 0, 0).to_string(), "x");
    }
}

#[test]
fn unit_differential_breaks_minimality() {
    let a = hypersurface();
    let window = FreeComplex::new(1, vec![scalar_map(&a, "x", 0, 1), scalar_map(&a, "1", 1, 0)], None).unwrap();
    let chk = window.check(&a);
    assert!(!chk.is_minimal);
    assert_eq!(chk.nonzero_composites, vec![1]);

    let lone = FreeComplex::new(1, vec![scalar_map(&a, "1", 0, 0)], None).unwrap();
    let chk = lone.check(&a);
    assert!(chk.is_complex && !chk.is_minimal);
}

#[test]
fn square_zero_ring_has_homology_one_at_each_position() {
    let a = square_zero();
    let c = multiplication_by(&a, "x", 1);
    assert!(c.check(&a).is_complex);
    let acyc = c.acyclicity(&a).unwrap();
    assert!(!acyc.is_exact());
    for p in &acyc.positions {
        // ker x on A(-i) is span{x, y} in degree i+1, the image is span{x}
        assert_eq!(p.total(), 1);
        assert_eq!(p.homology.get(&(p.position + 1)), Some(&1));
    }
    assert_eq!(c.total_acyclicity(&a).unwrap().verdict, TotalVerdict::FailsComplex);
}

#[test]
fn zero_complex_is_exact() {
    let a = hypersurface();
    let z = ModuleMap::zero(&a, FreeModule::zero(), FreeModule::zero());
    let window = FreeComplex::new(0, vec![z.clone(), z.clone(), z.clone()], None).unwrap();
    assert!(window.acyclicity(&a).unwrap().is_exact());
    let periodic = FreeComplex::new(0, vec![z], Some(1)).unwrap();
    let t = periodic.total_acyclicity(&a).unwrap();
    assert_eq!(t.verdict, TotalVerdict::TotallyAcyclic);
    assert!(!t.nontrivial);
}

#[test]
fn window_verdicts_are_flagged() {
    let a = hypersurface();
    let maps = (1..5).map(|i| scalar_map(&a, "x", i - 1, 1)).collect();
    let window = FreeComplex::new(1, maps, None).unwrap();
    let acyc = window.acyclicity(&a).unwrap();
    assert!(acyc.window_only && acyc.is_exact());
    assert_eq!(
        acyc.positions.iter().map(|p| p.position).collect::<Vec<_>>(),
        vec![1, 2, 3]
    );
}

#[test]
fn dual_of_dual_is_the_original() {
    for (a, entry) in [(hypersurface(), "x"), (square_zero(), "x"), (square_zero(), "y")] {
        let c = multiplication_by(&a, entry, 1);
        let d = c.dual(&a);
        assert_eq!(d.dual(&a), c);
        let tc = c.total_acyclicity(&a).unwrap();
        let tdd = d.dual(&a).total_acyclicity(&a).unwrap();
        assert_eq!(tc, tdd);
    }
    let a = hypersurface();
    let maps = (1..4).map(|i| scalar_map(&a, "x", i - 1, 1)).collect();
    let window = FreeComplex::new(1, maps, None).unwrap();
    assert_eq!(window.dual(&a).lo(), -2);
    assert_eq!(window.dual(&a).dual(&a), window);
}

#[test]
fn hypersurface_syzygies_are_the_residue_field() {
    let a = hypersurface();
    let c = multiplication_by(&a, "x", 1);
    for i in [-3, 0, 1, 4] {
        let syz = c.syzygy(&a, i).unwrap();
        let dims: Vec<(i32, usize)> = syz.presentation.dims(&a).into_iter().filter(|&(_, n)| n > 0).collect();
        assert_eq!(dims, vec![(i + 1, 1)]);
        assert_eq!(syz.presentation.generators.rank(), 1);
        assert_eq!(syz.presentation.relations.entry_poly(&a, 0, 0).to_string(), "x");
    }
}

#[test]
fn zero_differentials_have_no_syzygy() {
    let a = hypersurface();
    let z = ModuleMap::zero(&a, FreeModule::new(vec![0]), FreeModule::new(vec![0]));
    let c = FreeComplex::new(1, vec![z], Some(1)).unwrap();
    assert!(!c.acyclicity(&a).unwrap().is_exact());
    assert_eq!(c.syzygy(&a, 0).unwrap_err(), ComplexError::NotAcyclic { position: 0 });
}

#[test]
fn alternating_period_two_complex_is_rejected() {
    let a = algebra(&["x", "y"], &["x^2", "y^2"]);
    let c = FreeComplex::new(1, vec![scalar_map(&a, "x", 0, 1), scalar_map(&a, "y", 1, 1)], Some(2)).unwrap();
    assert_eq!(c.period().unwrap().shift, 2);
    assert!(!c.check(&a).is_complex);
    assert!(matches!(c.acyclicity(&a), Err(ComplexError::NotAComplex { .. })));
    assert!(matches!(c.syzygy(&a, 1), Err(ComplexError::NotAComplex { .. })));
}

#[test]
fn malformed_windows_are_rejected() {
    let a = hypersurface();
    let gap = FreeComplex::new(1, vec![scalar_map(&a, "x", 0, 1), scalar_map(&a, "x", 3, 1)], None);
    assert_eq!(gap.unwrap_err(), ComplexError::ModuleMismatch { position: 1 });
    let seam = FreeComplex::new(1, vec![scalar_map(&a, "x", 0, 1), scalar_map(&a, "x^2", 1, 2)], Some(1));
    assert!(matches!(
        seam,
        Err(ComplexError::ModuleMismatch { .. }) | Err(ComplexError::SeamMismatch { .. })
    ));
    let long = FreeComplex::new(1, vec![scalar_map(&a, "x", 0, 1)], Some(2));
    assert_eq!(long.unwrap_err(), ComplexError::BadPeriod { period: 2, maps: 1 });
    assert!(FreeComplex::new(1, vec![scalar_map(&a, "x", 0, 1), scalar_map(&a, "x", 1, 1)], Some(1)).is_ok());
}

#[test]
fn flat_base_change_preserves_total_acyclicity() {
    let f = RationalField;
    let q_spec = spec(&f, &["x"], &["x^2"]);
    let r_spec = q_spec.tensor(&spec(&f, &["y"], &["y^2"])).unwrap();
    let q = GradedAlgebra::build(&q_spec, 12).unwrap();
    let r = GradedAlgebra::build(&r_spec, 12).unwrap();
    let c = multiplication_by(&q, "x", 1);
    let bc = base_change(&q, &c, &r).unwrap();
    assert!(bc.flat_certified);
    let t = bc.complex.total_acyclicity(&r).unwrap();
    assert_eq!(t.verdict, TotalVerdict::TotallyAcyclic);
    assert!(t.nontrivial);
}

#[test]
fn identity_base_change_is_the_identity() {
    let a = hypersurface();
    let c = multiplication_by(&a, "x", 1);
    let bc = base_change(&a, &c, &a).unwrap();
    assert_eq!(bc.complex, c);
    assert!(bc.flat_certified);
}

#[test]
fn base_change_killing_an_entry_is_rechecked() {
    let f = RationalField;
    let q_spec = spec(&f, &["x", "y"], &["x^2", "y^2"]);
    let xy = parse_poly(&f, q_spec.context(), "x*y").unwrap();
    let r_spec = q_spec.with_relations(vec![xy]).unwrap();
    let q = GradedAlgebra::build(&q_spec, 12).unwrap();
    let r = GradedAlgebra::build(&r_spec, 12).unwrap();
    let c = multiplication_by(&q, "x*y", 2);
    assert!(c.check(&q).is_complex);
    let bc = base_change(&q, &c, &r).unwrap();
    assert!(!bc.flat_certified);
    assert!(bc.complex.maps()[0].is_zero(&r));
    let t = bc.complex.total_acyclicity(&r).unwrap();
    assert_eq!(t.verdict, TotalVerdict::FailsComplex);
}

#[test]
fn base_change_needs_an_extension() {
    let a = hypersurface();
    let b = algebra(&["y"], &["y^2"]);
    let c = multiplication_by(&a, "x", 1);
    assert!(matches!(base_change(&a, &c, &b), Err(ComplexError::SpecMismatch(_))));
    let other = algebra(&["x"], &["x^3"]);
    assert!(matches!(
        base_change(&a, &c, &other),
        Err(ComplexError::SpecMismatch(_))
    ));
}

#[test]
fn residue_field_of_hypersurface_is_totally_reflexive() {
    let a = hypersurface();
    let r = totally_reflexive_check(&a, &Presentation::residue_field(&a), 5, 10).unwrap();
    assert!(r.biduality);
    assert_eq!(r.ext_module.dims, vec![0; 5]);
    assert_eq!(r.ext_dual.dims, vec![0; 5]);
    assert!(r.passes());
    assert_eq!(r.scope, VerdictScope::Depth(5));

    let c = multiplication_by(&a, "x", 1);
    let (r, syz) = totally_reflexive_certified(&a, &c, 0, 5, 10).unwrap();
    assert!(r.passes() && r.certificate);
    assert_eq!(r.scope, VerdictScope::Exact);
    assert_eq!(syz.presentation.generators.rank(), 1);
}

#[test]
fn residue_field_of_square_zero_ring_fails_ext_vanishing() {
    let a = square_zero();
    let r = totally_reflexive_check(&a, &Presentation::residue_field(&a), 3, 10).unwrap();
    assert_eq!(r.ext_module.first_failure, Some(1));
    assert!(!r.passes());
    assert_eq!(r.scope, VerdictScope::Depth(3));
}

#[test]
fn free_modules_are_totally_reflexive() {
    let a = square_zero();
    let r = totally_reflexive_check(&a, &Presentation::free(&a, vec![0, 2]), 3, 10).unwrap();
    assert!(r.passes());
}

#[test]
fn syzygies_of_periodic_totally_acyclic_complexes_are_exactly_reflexive() {
    let f = RationalField;
    let q_spec = spec(&f, &["x"], &["x^2"]);
    let q = GradedAlgebra::build(&q_spec, 12).unwrap();
    let r = GradedAlgebra::build(&q_spec.tensor(&spec(&f, &["y"], &["y^2"])).unwrap(), 12).unwrap();
    let over_r = base_change(&q, &multiplication_by(&q, "x", 1), &r).unwrap().complex;
    for (alg, c) in [(&q, multiplication_by(&q, "x", 1)), (&r, over_r)] {
        for i in -1..2 {
            let (rep, _) = totally_reflexive_certified(alg, &c, i, 3, 10).unwrap();
            assert!(rep.passes());
            assert_eq!(rep.scope, VerdictScope::Exact);
        }
    }
}

#[test]
fn acyclicity_does_not_depend_on_variable_order() {
    let f = RationalField;
    let s = spec(&f, &["x", "y", "z"], &["x^2", "x*y", "y^2", "z^2", "x*z"]);
    let p = s.permute_vars(&[2, 0, 1]).unwrap();
    let a = GradedAlgebra::build(&s, 12).unwrap();
    let b = GradedAlgebra::build(&p, 12).unwrap();
    for entry in ["x", "z", "y"] {
        let ha = multiplication_by(&a, entry, 1).acyclicity(&a).unwrap();
        let hb = multiplication_by(&b, entry, 1).acyclicity(&b).unwrap();
        assert_eq!(ha, hb, "entry {entry}");
    }
}
