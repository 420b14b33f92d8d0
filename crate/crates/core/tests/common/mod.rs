#![allow(dead_code)]

use tacalc_core::algebra::AlgebraSpec;
use tacalc_core::polyring::{parse_poly, PolyContext};
use tacalc_core::scalars::Field;

pub const S_VARS: &[&str] = &["X1", "X2", "X3", "X4", "X5"];
pub const S_RELS: &[&str] = &[
    "2*X1*X3 + X2*X3",
    "X1*X4 + X2*X4",
    "X3^2 + 2*X1*X5 - X2*X5",
    "X4^2 + X1*X5 - X2*X5",
    "X1^2",
    "X2^2",
    "X3*X4",
    "X3*X5",
    "X4*X5",
    "X5^2",
];

pub const Q_VARS: &[&str] = &["Y1", "Y2", "Y3", "Y4"];
pub const Q_RELS: &[&str] = &[
    "Y1^2",
    "Y1*Y2 - Y3^2",
    "Y1*Y3 - Y2*Y4",
    "Y1*Y4",
    "Y2^2 + Y3*Y4",
    "Y2*Y3",
    "Y4^2",
];

pub fn spec<F: Field>(field: &F, vars: &[&str], rels: &[&str]) -> AlgebraSpec<F> {
    let ctx = PolyContext::new(vars.iter().copied()).unwrap();
    let rels = rels.iter().map(|r| parse_poly(field, &ctx, r).unwrap()).collect();
    AlgebraSpec::new(field, &ctx, rels).unwrap()
}

pub fn s_spec<F: Field>(field: &F) -> AlgebraSpec<F> {
    spec(field, S_VARS, S_RELS)
}

pub fn q_spec<F: Field>(field: &F) -> AlgebraSpec<F> {
    spec(field, Q_VARS, Q_RELS)
}

pub fn r_spec<F: Field>(field: &F) -> AlgebraSpec<F> {
    s_spec(field).tensor(&q_spec(field)).unwrap()
}
