use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tacalc_core::algebra::{AlgebraSpec, GradedAlgebra, DEFAULT_DEGREE_CAP};
use tacalc_core::homology::{
    deviations, minimal_resolution, series_product, Presentation, Resolution, DEFAULT_HOM_CAP, DEFAULT_INT_CAP,
};
use tacalc_core::homotopylie::{obstruction, HomotopyLie, LieOptions, PiLabel};
use tacalc_core::pfaffcomplex::{generic_be_complex, specialize, specialize_polys, PolyMatrix};
use tacalc_core::quaddual::{koszul_smoke, quadratic_dual};
use tacalc_core::scalars::{Field, FieldDesc, PrimeField, RationalField};
use tacalc_core::totalacyclicity::{
    base_change, totally_reflexive_certified, totally_reflexive_check, Acyclicity, FreeComplex, ReflexiveReport,
    TotalAcyclicity, TotalVerdict, VerdictScope,
};

use crate::error::CliError;
use crate::files::{
    declared_field, load_algebra, load_algebra_in, load_assignment, load_complex, render_algebra, AlgebraFile,
    AnyAlgebra, AnyComplex, ComplexFile, FieldChoice, Target,
};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exact computations over graded Artinian quotients of polynomial rings.
#[derive(Debug, Parser)]
#[command(name = "tacalc", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Compute over F_p instead of the file's field.
    #[arg(long, global = true, value_name = "P")]
    pub prime: Option<u32>,
    /// Homological degree cap for resolutions.
    #[arg(long, global = true, default_value_t = DEFAULT_HOM_CAP)]
    pub hom_cap: usize,
    /// Internal degree cap for kernel computations.
    #[arg(long, global = true, default_value_t = DEFAULT_INT_CAP)]
    pub int_cap: i32,
    /// Polynomial degree cap when building an algebra.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: u32,
    #[command(subcommand)]
    pub command: Command,
}

/// One algebra file, or two factors of a tensor product.
#[derive(Debug, Args)]
pub struct Input {
    #[arg(required_unless_present = "tensor")]
    pub algebra: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "algebra")]
    pub tensor: Option<Vec<PathBuf>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function.
    Hilbert { algebra: PathBuf },
    /// Minimal graded free resolution of k or of a named module.
    Resolve {
        algebra: PathBuf,
        #[arg(long)]
        module: Option<String>,
    },
    /// Poincare series of k through the homological cap.
    Poincare(Input),
    /// Deviations from the first four Betti numbers of k.
    Deviations(Input),
    /// Quadratic dual and its graded components.
    Dual {
        algebra: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Degree-2 element in T1..Tn to test against the relation span.
        #[arg(long = "member", value_name = "ELEMENT")]
        members: Vec<String>,
    },
    /// Homotopy Lie algebra components in degrees 2 and 3.
    Pi { algebra: PathBuf },
    /// Central elements of degree 2.
    Central { algebra: PathBuf },
    /// Degree-2 center test for embedded deformations.
    Obstruction(Input),
    /// Socle and Gorenstein verdict.
    Gorenstein(Input),
    /// Tensor product of two algebras, written in the algebra file format.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generic grade-3 Pfaffian complex, optionally specialized.
    Pfaffian {
        #[arg(long)]
        size: usize,
        /// Assignment file `t_ij = <polynomial>` with a target algebra or ring.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Total acyclicity of a complex file.
    TacCheck {
        complex: PathBuf,
        /// Algebra to base change to (must extend the complex's algebra).
        #[arg(long, value_name = "ALGEBRA")]
        base_change: Option<PathBuf>,
    },
    /// Totally reflexive module check.
    TrmCheck {
        #[arg(required_unless_present = "complex")]
        algebra: Option<PathBuf>,
        #[arg(long, requires = "algebra")]
        module: Option<String>,
        /// Check a syzygy of this complex instead of a declared module.
        #[arg(long, conflicts_with = "algebra", requires = "position")]
        complex: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        position: Option<i32>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub field: FieldChoice,
    pub hom_cap: usize,
    pub int_cap: i32,
    pub degree_cap: u32,
}

impl Caps {
    fn lie(&self) -> LieOptions {
        LieOptions {
            int_cap: self.int_cap,
            allow_non_koszul: false,
        }
    }
}

macro_rules! with_algebra {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyAlgebra::Rational($f) => $body,
            AnyAlgebra::Prime($f) => $body,
        }
    };
}

/// Factors of the input (one, or two for `--tensor`) over a common field.
enum AnyFactors {
    Rational(Vec<AlgebraFile<RationalField>>),
    Prime(Vec<AlgebraFile<PrimeField>>),
}

fn load_input(input: &Input, caps: &Caps) -> Result<AnyFactors, CliError> {
    let paths: Vec<&PathBuf> = match (&input.algebra, &input.tensor) {
        (Some(a), None) => vec![a],
        (None, Some(t)) => t.iter().collect(),
        _ => return Err(CliError::Usage("give one algebra or --tensor A B".into())),
    };
    let first = load_algebra(paths[0], caps.field)?;
    Ok(match first {
        AnyAlgebra::Rational(a) => {
            let mut v = vec![a];
            for p in &paths[1..] {
                match load_algebra(p, caps.field)? {
                    AnyAlgebra::Rational(b) => v.push(b),
                    AnyAlgebra::Prime(_) => return Err(field_mismatch()),
                }
            }
            AnyFactors::Rational(v)
        }
        AnyAlgebra::Prime(a) => {
            let mut v = vec![a];
            for p in &paths[1..] {
                match load_algebra(p, caps.field)? {
                    AnyAlgebra::Prime(b) if b.spec.field() == v[0].spec.field() => v.push(b),
                    _ => return Err(field_mismatch()),
                }
            }
            AnyFactors::Prime(v)
        }
    })
}

fn field_mismatch() -> CliError {
    CliError::Usage("tensor factors are declared over different fields (use --prime to force one)".into())
}

macro_rules! with_factors {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyFactors::Rational($f) => $body,
            AnyFactors::Prime($f) => $body,
        }
    };
}

fn combined<F: Field>(factors: &[AlgebraFile<F>]) -> Result<AlgebraSpec<F>, CliError> {
    let mut spec = factors[0].spec.clone();
    for f in &factors[1..] {
        spec = spec.tensor(&f.spec)?;
    }
    Ok(spec)
}

fn residue_betti<F: Field>(alg: &GradedAlgebra<F>, hom: usize, caps: &Caps) -> Result<Resolution<F>, CliError> {
    Ok(minimal_resolution(
        alg,
        &Presentation::residue_field(alg),
        hom,
        caps.int_cap,
    )?)
}

fn padded(mut b: Vec<usize>, len: usize) -> Vec<usize> {
    b.resize(len, 0);
    b
}

fn field_name(desc: FieldDesc) -> String {
    desc.to_string()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn hilbert<F: Field>(af: &AlgebraFile<F>, caps: &Caps, r: &mut Report) -> Result<(), CliError> {
    let alg = af.build(caps.degree_cap)?;
    let h = alg.hilbert();
    let n = alg.nvars();
    r.set("field", field_name(af.spec.desc()))
        .set("vars", af.spec.var_names().to_vec())
        .set("relations", af.spec.relations().len())
        .set("hilbert", h.clone())
        .set("total_dim", alg.total_dim())
        .set("top_degree", alg.top_degree());
    let ok = alg
        .relation_ranks()
        .iter()
        .enumerate()
        .all(|(d, &rank)| alg.dim(d) + rank == binom(n + d - 1, d));
    r.check(
        "hilbert_plus_relation_rank",
        ok,
        "dim A_d + rank I_d = number of degree-d monomials",
    );
    Ok(())
}

fn graded_betti_json<F: Field>(res: &Resolution<F>) -> Value {
    Value::Array(
        res.graded_betti()
            .iter()
            .map(|m| Value::Array(m.iter().map(|(&j, &b)| json!([j, b])).collect()))
            .collect(),
    )
}

pub fn resolve<F: Field>(
    af: &AlgebraFile<F>,
    module: Option<&str>,
    caps: &Caps,
    r: &mut Report,
) -> Result<(), CliError> {
    let alg = af.build(caps.degree_cap)?;
    let pres = match module {
        Some(name) => af.module(name)?.presentation(&alg)?,
        None => Presentation::residue_field(&alg),
    };
    let res = minimal_resolution(&alg, &pres, caps.hom_cap, caps.int_cap)?;
    r.set("field", field_name(af.spec.desc()))
        .set("module", module.unwrap_or("k"))
        .set("hom_cap", caps.hom_cap)
        .set("betti", res.betti())
        .set("graded_betti", graded_betti_json(&res))
        .set("linear", res.is_linear())
        .set("complete", res.complete);
    r.check(
        "composites_zero",
        res.is_complex(&alg),
        "consecutive maps compose to zero",
    );
    r.check(
        "minimal",
        res.is_minimal(&alg),
        "every map has entries in the maximal ideal",
    );
    if !res.complete {
        r.warn(format!("resolution truncated at homological degree {}", caps.hom_cap));
    }
    Ok(())
}

pub fn poincare<F: Field>(factors: &[AlgebraFile<F>], caps: &Caps, r: &mut Report) -> Result<(), CliError> {
    let len = caps.hom_cap + 1;
    let spec = combined(factors)?;
    let alg = GradedAlgebra::build(&spec, caps.degree_cap)?;
    let direct = padded(residue_betti(&alg, caps.hom_cap, caps)?.betti(), len);
    r.set("field", field_name(spec.desc())).set("series", direct.clone());
    if factors.len() > 1 {
        let mut product = vec![1];
        let mut each = Vec::new();
        for f in factors {
            let a = f.build(caps.degree_cap)?;
            let s = padded(residue_betti(&a, caps.hom_cap, caps)?.betti(), len);
            product = series_product(&product, &s, len);
            each.push(Value::from(s));
        }
        r.set("factor_series", each).set("product_series", product.clone());
        r.check(
            "tensor_multiplicativity",
            product == direct,
            "series of the tensor product equals the product of the factors' series",
        );
    }
    Ok(())
}

pub fn deviations_cmd<F: Field>(factors: &[AlgebraFile<F>], caps: &Caps, r: &mut Report) -> Result<(), CliError> {
    let spec = combined(factors)?;
    let alg = GradedAlgebra::build(&spec, caps.degree_cap)?;
    let b = padded(residue_betti(&alg, 3, caps)?.betti(), 4);
    let eps = deviations(&b)?;
    r.set("field", field_name(spec.desc()))
        .set("betti", b.clone())
        .set("deviations", eps.to_vec());
    if factors.len() > 1 {
        let mut sum = [0i64; 3];
        let mut each = Vec::new();
        let mut product = vec![1];
        for f in factors {
            let a = f.build(caps.degree_cap)?;
            let fb = padded(residue_betti(&a, 3, caps)?.betti(), 4);
            let fe = deviations(&fb)?;
            for k in 0..3 {
                sum[k] += fe[k];
            }
            product = series_product(&product, &fb, 4);
            each.push(json!({"betti": fb, "deviations": fe.to_vec()}));
        }
        r.set("factors", each).set("deviation_sum", sum.to_vec());
        r.check(
            "deviation_additivity",
            sum == eps,
            "deviations of the tensor product are the sums over the factors",
        );
        r.check(
            "poincare_product",
            product == b,
            "Betti numbers of k multiply through degree 3",
        );
    }
    Ok(())
}

pub fn dual<F: Field>(
    af: &AlgebraFile<F>,
    max_degree: usize,
    members: &[String],
    caps: &Caps,
    r: &mut Report,
) -> Result<(), CliError> {
    let alg = af.build(caps.degree_cap)?;
    let d = quadratic_dual(&af.spec)?;
    let env = d.envelope(max_degree)?;
    let n = d.nvars();
    r.set("field", field_name(af.spec.desc()))
        .set("generators", d.names().to_vec())
        .set("relation_count", d.relation_count())
        .set("coefficient_rank", d.coefficient_rank())
        .set("relations", d.relation_strings())
        .set("dims", env.dims());
    let smoke = koszul_smoke(&alg, &d, max_degree, caps.int_cap)?;
    r.set(
        "koszul",
        json!({
            "betti": smoke.betti,
            "dual_dims": smoke.dual_dims,
            "linear": smoke.linear,
            "consistent": smoke.consistent(),
            "first_mismatch": smoke.first_mismatch,
        }),
    );
    if !members.is_empty() {
        let mut vecs = Vec::new();
        let mut out = Vec::new();
        for m in members {
            let (deg, v) = d.parse_element(m)?;
            if deg != 2 {
                return Err(CliError::Usage(format!(
                    "'{m}' has degree {deg}; dual relations have degree 2"
                )));
            }
            out.push(json!({"element": m, "in_span": d.span_contains(&v)}));
            vecs.push(v);
        }
        r.set("members", out)
            .set("members_span_relations", d.spans_equal(&vecs));
    }
    r.check(
        "relation_count",
        d.relation_count() == n * (n + 1) / 2 - d.coefficient_rank(),
        "relations = n(n+1)/2 - rank of the coefficient matrix",
    );
    Ok(())
}

fn label(l: PiLabel) -> String {
    match l {
        PiLabel::Square(j) => format!("T{}^2", j + 1),
        PiLabel::Bracket(i, j) => format!("[T{},T{}]", i + 1, j + 1),
        PiLabel::Commutator(k, j) => format!("[u{},T{}]", k + 1, j + 1),
    }
}

fn lie_json<F: Field>(lie: &HomotopyLie<F>, r: &mut Report) -> Result<(), CliError> {
    let env = &lie.envelope;
    let pi2: Vec<String> = lie
        .pi2
        .basis
        .iter()
        .map(|v| env.format(2, v))
        .collect::<Result<_, _>>()?;
    let (u3, count) = lie.pbw_degree3();
    r.set("betti", lie.betti().to_vec())
        .set("deviations", lie.deviations.to_vec())
        .set("dual_dims", env.dims())
        .set(
            "pi2",
            json!({
                "dim": lie.pi2.dim(),
                "labels": lie.pi2.labels.iter().map(|&l| label(l)).collect::<Vec<_>>(),
                "elements": pi2,
            }),
        )
        .set(
            "pi3",
            json!({
                "dim": lie.pi3.dim(),
                "labels": lie.pi3.labels.iter().map(|&l| label(l)).collect::<Vec<_>>(),
            }),
        )
        .set("pbw_degree3", json!({"dim_u3": u3, "count": count}));
    r.check(
        "koszul",
        lie.smoke.consistent(),
        "b_i = dim U_i for i <= 3 and the resolution is linear",
    );
    r.check("pi2_dim", lie.pi2.dim() as i64 == lie.deviations[1], "dim pi2 = eps2");
    r.check("pi3_dim", lie.pi3.dim() as i64 == lie.deviations[2], "dim pi3 = eps3");
    r.check("pbw_degree3", u3 == count, "dim U_3 = C(eps1,3) + eps1*eps2 + eps3");
    if lie.characteristic_three {
        r.warn("characteristic 3: divided squares are read through T_j^2");
    }
    Ok(())
}

pub fn pi<F: Field>(af: &AlgebraFile<F>, caps: &Caps, r: &mut Report) -> Result<(), CliError> {
    let alg = af.build(caps.degree_cap)?;
    let lie = HomotopyLie::compute(&alg, caps.lie())?;
    r.set("field", field_name(af.spec.desc()));
    lie_json(&lie, r)
}

pub fn central<F: Field>(af: &AlgebraFile<F>, caps: &Caps, r: &mut Report) -> Result<(), CliError> {
    let alg = af.build(caps.degree_cap)?;
    let lie = HomotopyLie::compute(&alg, caps.lie())?;
    let center = lie.center()?;
    let f = alg.field();
    let elements: Vec<String> = center
        .elements
        .iter()
        .map(|v| lie.envelope.format(2, v))
        .collect::<Result<_, _>>()?;
    let coefficients: Vec<Vec<String>> = center
        .coefficients
        .iter()
        .map(|c| c.iter().map(|x| f.format(x)).collect())
        .collect();
    r.set("field", field_name(af.spec.desc()))
        .set("pi2_dim", lie.pi2.dim())
        .set("center_dim", center.dim())
        .set("center", elements)
        .set("coefficients", coefficients);
    r.check(
        "koszul",
        lie.smoke.consistent(),
        "b_i = dim U_i for i <= 3 and the resolution is linear",
    );
    if lie.characteristic_three {
        r.warn("characteristic 3: divided squares are read through T_j^2");
    }
    Ok(())
}

pub fn obstruction_cmd<F: Field>(factors: &[AlgebraFile<F>], caps: &Caps, r: &mut Report) -> Result<(), CliError> {
    let algs = factors
        .iter()
        .map(|f| f.build(caps.degree_cap))
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&GradedAlgebra<F>> = algs.iter().collect();
    let rep = obstruction(&refs, caps.lie())?;
    let each: Vec<Value> = rep
        .factors
        .iter()
        .map(|f| {
            json!({
                "betti": f.betti,
                "dual_dims": f.dual_dims,
                "deviations": f.deviations.to_vec(),
                "pi2_dim": f.pi2_dim,
                "pi3_dim": f.pi3_dim,
                "center_dim": f.center_dim,
                "pbw_degree3": [f.pbw_degree3.0, f.pbw_degree3.1],
            })
        })
        .collect();
    r.set("field", field_name(factors[0].spec.desc()))
        .set("factors", each)
        .set("center_dim", rep.center_dim)
        .set("verdict", rep.verdict.to_string());
    for (k, f) in rep.factors.iter().enumerate() {
        let tag = if rep.factors.len() > 1 {
            format!(" (factor {})", k + 1)
        } else {
            String::new()
        };
        r.check(
            &format!("pbw_degree3{tag}"),
            f.pbw_degree3.0 == f.pbw_degree3.1,
            "dim U_3 = C(eps1,3) + eps1*eps2 + eps3",
        );
        if f.characteristic_three {
            r.warn(format!("characteristic 3{tag}: divided squares are read through T_j^2"));
        }
    }
    if rep.center_dim > 0 {
        r.warn("a nonzero central element does not prove that an embedded deformation exists");
    }
    Ok(())
}

fn socle_json<F: Field>(alg: &GradedAlgebra<F>) -> Value {
    let s = alg.socle();
    let basis: Vec<String> = s
        .basis
        .iter()
        .map(|(d, v)| alg.element_poly(*d, v).to_string())
        .collect();
    let degrees: Vec<usize> = s.basis.iter().map(|(d, _)| *d).collect();
    json!({
        "hilbert": alg.hilbert(),
        "socle_dim": s.dim,
        "socle_degrees": degrees,
        "socle": basis,
        "gorenstein": s.gorenstein,
    })
}

pub fn gorenstein<F: Field>(factors: &[AlgebraFile<F>], caps: &Caps, r: &mut Report) -> Result<(), CliError> {
    let spec = combined(factors)?;
    let alg = GradedAlgebra::build(&spec, caps.degree_cap)?;
    let s = alg.socle();
    r.set("field", field_name(spec.desc()));
    if let Value::Object(m) = socle_json(&alg) {
        r.results.extend(m);
    }
    if factors.len() > 1 {
        let mut product = 1;
        let mut each = Vec::new();
        for f in factors {
            let a = f.build(caps.degree_cap)?;
            product *= a.socle().dim;
            each.push(socle_json(&a));
        }
        r.set("factors", each).set("socle_dim_product", product);
        r.check(
            "socle_product",
            product == s.dim,
            "socle dimension of the tensor is the product over the factors",
        );
    }
    r.set("verdict", if s.gorenstein { "Gorenstein" } else { "not Gorenstein" });
    Ok(())
}

pub fn tensor<F: Field>(
    a: &AlgebraFile<F>,
    b: &AlgebraFile<F>,
    output: Option<&Path>,
    caps: &Caps,
    r: &mut Report,
) -> Result<(), CliError> {
    let spec = a.spec.tensor(&b.spec)?;
    let file = AlgebraFile {
        spec: spec.clone(),
        modules: Vec::new(),
    };
    let text = render_algebra(&file);
    let ga = a.build(caps.degree_cap)?;
    let gb = b.build(caps.degree_cap)?;
    let gab = GradedAlgebra::build(&spec, caps.degree_cap)?;
    let h = gab.hilbert();
    let product = series_product(&ga.hilbert(), &gb.hilbert(), h.len());
    r.set("field", field_name(spec.desc()))
        .set("vars", spec.var_names().to_vec())
        .set(
            "relations",
            spec.relations().iter().map(ToString::to_string).collect::<Vec<_>>(),
        )
        .set("relation_count", spec.relations().len())
        .set("hilbert", h.clone())
        .set("factor_hilbert", vec![ga.hilbert(), gb.hilbert()]);
    r.check(
        "hilbert_product",
        product == h,
        "Hilbert function of the tensor is the product of the factors'",
    );
    if let Some(path) = output {
        std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        r.set("written", path.display().to_string());
    }
    Ok(())
}

fn matrix_strings<F: Field>(m: &PolyMatrix<F>) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

fn acyclicity_json(a: &Acyclicity) -> Value {
    Value::Array(
        a.positions
            .iter()
            .map(|p| {
                json!({
                    "position": p.position,
                    "total": p.total(),
                    "by_degree": p.homology.iter().map(|(&d, &n)| json!([d, n])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn complex_modules<F: Field>(c: &FreeComplex<F>) -> Value {
    let from = c.lo() - 1;
    Value::Array(
        (from..=c.hi())
            .map(|i| json!({"position": i, "degrees": c.module(i).map(|m| m.degrees().to_vec()).unwrap_or_default()}))
            .collect(),
    )
}

pub fn pfaffian<F: Field>(
    field: &F,
    size: usize,
    spec: Option<&Path>,
    caps: &Caps,
    r: &mut Report,
) -> Result<(), CliError> {
    let be = generic_be_complex(field, size)?;
    let report = be.verify()?;
    let [d1, d2, _] = be.maps();
    r.set("field", field_name(field.desc()))
        .set("size", size)
        .set("ranks", report.ranks.to_vec())
        .set("term_counts", report.term_counts.clone())
        .set("sigma", be.sigma.iter().map(ToString::to_string).collect::<Vec<_>>())
        .set("tau", matrix_strings(&d2))
        .set("sigma_transpose", matrix_strings(&d1))
        .set("tau_sigma_zero", report.tau_sigma_zero)
        .set("sigma_tau_zero", report.sigma_tau_zero)
        .set("sigma_nonzero", report.sigma_nonzero);
    r.check("tau_sigma_zero", report.tau_sigma_zero, "tau * sigma = 0 identically");
    r.check("sigma_tau_zero", report.sigma_tau_zero, "sigma^T * tau = 0 identically");
    r.check("sigma_nonzero", report.sigma_nonzero, "the Pfaffian vector is nonzero");
    let Some(path) = spec else {
        return Ok(());
    };
    let assignment = load_assignment(field, path, size)?;
    let images = &assignment.images;
    match &assignment.target {
        Target::Ring(ctx) => {
            let s = specialize_polys(&be, images)?;
            let [s1, s2, s3] = &s.maps;
            r.set(
                "specialized",
                json!({
                    "target": format!("polynomial ring in {}", ctx.names().join(", ")),
                    "image_degree": s.degree,
                    "sigma": s3.iter().map(|row| row[0].to_string()).collect::<Vec<_>>(),
                    "tau": matrix_strings(s2),
                    "sigma_transpose": matrix_strings(s1),
                    "composites_zero": true,
                }),
            );
        }
        Target::Algebra(af) => {
            let alg = af.build(caps.degree_cap)?;
            let c = specialize(&be, &alg, images)?;
            let check = c.check(&alg);
            let acyc = c.acyclicity(&alg)?;
            r.set(
                "specialized",
                json!({
                    "target": "algebra",
                    "vars": af.spec.var_names(),
                    "modules": complex_modules(&c),
                    "composites_zero": check.is_complex,
                    "minimal": check.is_minimal,
                    "homology": acyclicity_json(&acyc),
                    "exact_at_interior": acyc.is_exact(),
                }),
            );
            r.check(
                "specialized_composites_zero",
                check.is_complex,
                "composites vanish in the target algebra",
            );
            r.warn("exactness of a specialized window is checked only at its interior positions");
        }
    }
    Ok(())
}

fn verdict_text(v: TotalVerdict) -> &'static str {
    match v {
        TotalVerdict::TotallyAcyclic => "totally acyclic",
        TotalVerdict::FailsComplex => "not totally acyclic: the complex is not exact",
        TotalVerdict::FailsDual => "not totally acyclic: the dual complex is not exact",
    }
}

fn total_json(t: &TotalAcyclicity) -> Value {
    json!({
        "verdict": verdict_text(t.verdict),
        "minimal": t.minimal,
        "nontrivial": t.nontrivial,
        "window_only": t.window_only,
        "homology": acyclicity_json(&t.complex),
        "dual_homology": acyclicity_json(&t.dual),
    })
}

pub fn tac_check<F: Field>(
    cf: &ComplexFile<F>,
    base: Option<&Path>,
    caps: &Caps,
    r: &mut Report,
) -> Result<(), CliError> {
    let alg = cf.algebra.build(caps.degree_cap)?;
    let c = cf.build(&alg)?;
    let check = c.check(&alg);
    r.set("field", field_name(cf.algebra.spec.desc()))
        .set("algebra", cf.algebra_path.display().to_string())
        .set("lo", c.lo())
        .set("hi", c.hi())
        .set(
            "period",
            c.period()
                .map(|p| json!({"length": p.length, "shift": p.shift}))
                .unwrap_or(Value::Null),
        )
        .set("modules", complex_modules(&c))
        .set("is_complex", check.is_complex)
        .set("nonzero_composites", check.nonzero_composites.clone());
    if !check.is_complex {
        r.set("verdict", "not a complex");
        return Ok(());
    }
    let t = c.total_acyclicity(&alg)?;
    if let Value::Object(m) = total_json(&t) {
        r.results.extend(m);
    }
    let dd = c.dual(&alg).dual(&alg);
    let dd_verdict = dd.total_acyclicity(&alg)?.verdict;
    let dv = c.dual(&alg).total_acyclicity(&alg)?.verdict;
    r.set("dual_verdict", verdict_text(dv));
    r.check(
        "dual_of_dual",
        dd == c && dd_verdict == t.verdict,
        "the dual of the dual is the complex, with the same verdict",
    );
    if t.window_only {
        r.warn("finite window: the verdict covers the listed positions only");
    }
    if let Some(path) = base {
        let target = load_algebra_in(alg.field(), path)?;
        let talg = target.build(caps.degree_cap)?;
        let bc = base_change(&alg, &c, &talg)?;
        let tcheck = bc.complex.check(&talg);
        let mut entry = json!({
            "algebra": path.display().to_string(),
            "flat_certified": bc.flat_certified,
            "is_complex": tcheck.is_complex,
        });
        if tcheck.is_complex {
            let bt = bc.complex.total_acyclicity(&talg)?;
            let preserved = bt.verdict == t.verdict;
            entry["verdict"] = verdict_text(bt.verdict).into();
            entry["minimal"] = bt.minimal.into();
            entry["verdict_preserved"] = preserved.into();
            if bc.flat_certified {
                r.check("flat_base_change", preserved, "flat base change preserves the verdict");
            }
        }
        r.set("base_change", entry);
    }
    Ok(())
}

fn reflexive_json(rep: &ReflexiveReport) -> Value {
    let scope = match rep.scope {
        VerdictScope::Exact => "exact".to_string(),
        VerdictScope::Depth(d) => format!("through depth {d}"),
    };
    let mut failures = Vec::new();
    if !rep.biduality {
        failures.push("M -> M** is not an isomorphism".to_string());
    }
    if let Some(i) = rep.ext_module.first_failure {
        failures.push(format!("Ext^{i}(M, A) != 0"));
    }
    if let Some(i) = rep.ext_dual.first_failure {
        failures.push(format!("Ext^{i}(M*, A) != 0"));
    }
    let verdict = if !failures.is_empty() {
        format!("not totally reflexive: {}", failures.join("; "))
    } else if rep.scope == VerdictScope::Exact {
        "totally reflexive (exact: periodic certificate)".to_string()
    } else {
        format!("biduality holds and Ext vanishes through i = {}", rep.depth)
    };
    json!({
        "biduality": rep.biduality,
        "ext_module": {"dims": rep.ext_module.dims, "first_failure": rep.ext_module.first_failure},
        "ext_dual": {"dims": rep.ext_dual.dims, "first_failure": rep.ext_dual.first_failure},
        "depth": rep.depth,
        "scope": scope,
        "certificate": rep.certificate,
        "passes": rep.passes(),
        "verdict": verdict,
    })
}

pub fn trm_module<F: Field>(
    af: &AlgebraFile<F>,
    module: &str,
    depth: usize,
    caps: &Caps,
    r: &mut Report,
) -> Result<(), CliError> {
    let alg = af.build(caps.degree_cap)?;
    let pres = af.module(module)?.presentation(&alg)?;
    let rep = totally_reflexive_check(&alg, &pres, depth, caps.int_cap)?;
    let v = reflexive_json(&rep);
    r.set("field", field_name(af.spec.desc())).set("module", module);
    if let Value::Object(m) = v {
        r.results.extend(m);
    }
    if rep.passes() {
        r.warn(format!("Ext vanishing checked for 1 <= i <= {depth} only"));
    }
    Ok(())
}

pub fn trm_syzygy<F: Field>(
    cf: &ComplexFile<F>,
    position: i32,
    depth: usize,
    caps: &Caps,
    r: &mut Report,
) -> Result<(), CliError> {
    let alg = cf.algebra.build(caps.degree_cap)?;
    let c = cf.build(&alg)?;
    let (rep, syz) = totally_reflexive_certified(&alg, &c, position, depth, caps.int_cap)?;
    let v = reflexive_json(&rep);
    r.set("field", field_name(cf.algebra.spec.desc()))
        .set("module", format!("syzygy at position {position}"))
        .set(
            "syzygy",
            json!({
                "generator_degrees": syz.presentation.generators.degrees(),
                "relation_degrees": syz.presentation.relations.source().degrees(),
            }),
        );
    if let Value::Object(m) = v {
        r.results.extend(m);
    }
    Ok(())
}

pub fn execute(cli: &Cli, r: &mut Report) -> Result<(), CliError> {
    let caps = Caps {
        field: cli.prime.map_or(FieldChoice::Declared, FieldChoice::Prime),
        hom_cap: cli.hom_cap,
        int_cap: cli.int_cap,
        degree_cap: cli.degree_cap,
    };
    match &cli.command {
        Command::Hilbert { algebra } => {
            with_algebra!(load_algebra(algebra, caps.field)?, af => hilbert(&af, &caps, r))
        }
        Command::Resolve { algebra, module } => {
            with_algebra!(load_algebra(algebra, caps.field)?, af => resolve(&af, module.as_deref(), &caps, r))
        }
        Command::Poincare(input) => {
            with_factors!(load_input(input, &caps)?, fs => poincare(&fs, &caps, r))
        }
        Command::Deviations(input) => {
            with_factors!(load_input(input, &caps)?, fs => deviations_cmd(&fs, &caps, r))
        }
        Command::Dual {
            algebra,
            max_degree,
            members,
        } => {
            with_algebra!(load_algebra(algebra, caps.field)?, af => dual(&af, *max_degree, members, &caps, r))
        }
        Command::Pi { algebra } => {
            with_algebra!(load_algebra(algebra, caps.field)?, af => pi(&af, &caps, r))
        }
        Command::Central { algebra } => {
            with_algebra!(load_algebra(algebra, caps.field)?, af => central(&af, &caps, r))
        }
        Command::Obstruction(input) => {
            with_factors!(load_input(input, &caps)?, fs => obstruction_cmd(&fs, &caps, r))
        }
        Command::Gorenstein(input) => {
            with_factors!(load_input(input, &caps)?, fs => gorenstein(&fs, &caps, r))
        }
        Command::Tensor { a, b, output } => {
            let input = Input {
                algebra: None,
                tensor: Some(vec![a.clone(), b.clone()]),
            };
            with_factors!(load_input(&input, &caps)?, fs => tensor(&fs[0], &fs[1], output.as_deref(), &caps, r))
        }
        Command::Pfaffian { size, spec } => {
            let declared = match spec {
                Some(path) => assignment_field(path)?,
                None => FieldDesc::Rational,
            };
            match caps.field.resolve(declared) {
                FieldDesc::Rational => pfaffian(&RationalField, *size, spec.as_deref(), &caps, r),
                FieldDesc::Prime(p) => pfaffian(&PrimeField::new(p)?, *size, spec.as_deref(), &caps, r),
            }
        }
        Command::TacCheck { complex, base_change } => match load_complex(complex, caps.field)? {
            AnyComplex::Rational(cf) => tac_check(&cf, base_change.as_deref(), &caps, r),
            AnyComplex::Prime(cf) => tac_check(&cf, base_change.as_deref(), &caps, r),
        },
        Command::TrmCheck {
            algebra,
            module,
            complex,
            position,
            depth,
        } => match (algebra, complex) {
            (Some(a), None) => {
                let module = module
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("trm-check on an algebra file needs --module <name>".into()))?;
                with_algebra!(load_algebra(a, caps.field)?, af => trm_module(&af, module, *depth, &caps, r))
            }
            (None, Some(c)) => {
                let position = position.ok_or_else(|| CliError::Usage("--complex needs --position <i>".into()))?;
                match load_complex(c, caps.field)? {
                    AnyComplex::Rational(cf) => trm_syzygy(&cf, position, *depth, &caps, r),
                    AnyComplex::Prime(cf) => trm_syzygy(&cf, position, *depth, &caps, r),
                }
            }
            _ => Err(CliError::Usage(
                "give an algebra file with --module, or --complex with --position".into(),
            )),
        },
    }
}

/// Field of an assignment file: that of its target algebra, else its own
/// `field` line.
fn assignment_field(path: &Path) -> Result<FieldDesc, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let shown = path.display().to_string();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        if let Some(rest) = body.strip_prefix("algebra ") {
            let rel = Path::new(rest.trim());
            let full = path.parent().map_or(rel.to_path_buf(), |d| d.join(rel));
            let t = std::fs::read_to_string(&full).map_err(|e| CliError::Io(format!("{}: {e}", full.display())))?;
            return declared_field(&t, &full.display().to_string());
        }
    }
    declared_field(&text, &shown)
}
