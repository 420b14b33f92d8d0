use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::homology::{FreeModule, ModuleMap};
use crate::polyring::{submax_pfaffians, PolyContext, Polynomial, SkewMatrix};
use crate::scalars::{map_range, parallelism, Field};
use crate::totalacyclicity::FreeComplex;

use super::PfaffError;

pub const MAX_BE_SIZE: usize = 9;

/// Row-major matrix of polynomials.
pub type PolyMatrix<F> = Vec<Vec<Polynomial<F>>>;

/// `A * B` over one polynomial context; `field`/`ctx` cover an empty inner
/// dimension.
pub fn poly_matmul<F: Field>(
    field: &F,
    ctx: &Arc<PolyContext>,
    a: &PolyMatrix<F>,
    b: &PolyMatrix<F>,
) -> Result<PolyMatrix<F>, PfaffError> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        if row.len() != inner {
            return Err(crate::polyring::PolyError::ContextMismatch.into());
        }
        let mut r = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc = Polynomial::zero(field, ctx);
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() || b[k][j].is_zero() {
                    continue;
                }
                acc = acc.add(&x.mul(&b[k][j])?)?;
            }
            r.push(acc);
        }
        out.push(r);
    }
    Ok(out)
}

fn all_zero<F: Field>(m: &PolyMatrix<F>) -> bool {
    m.iter().flatten().all(Polynomial::is_zero)
}

/// `0 → P --σ--> P^d --τ--> P^d --σ*--> P → 0` with `τ` skew-symmetric of
/// odd size `d` and `σ` its signed submaximal Pfaffians. Fields are public
/// so the data can be altered and re-verified.
#[derive(Debug, Clone, PartialEq)]
pub struct BeComplex<F: Field> {
    pub tau: SkewMatrix<F>,
    pub sigma: Vec<Polynomial<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeReport {
    pub size: usize,
    /// `τσ = 0` identically.
    pub tau_sigma_zero: bool,
    /// `σ*τ = 0` identically.
    pub sigma_tau_zero: bool,
    pub sigma_nonzero: bool,
    /// Ranks of the free modules, left to right.
    pub ranks: [usize; 4],
    /// Number of terms of each `s_j`.
    pub term_counts: Vec<usize>,
}

impl BeReport {
    pub fn passes(&self) -> bool {
        self.tau_sigma_zero && self.sigma_tau_zero && self.sigma_nonzero
    }
}

fn check_size(d: usize) -> Result<(), PfaffError> {
    if d % 2 == 0 || d < 3 {
        return Err(PfaffError::EvenSize(d));
    }
    if d > MAX_BE_SIZE {
        return Err(PfaffError::TooLarge {
            size: d,
            cap: MAX_BE_SIZE,
        });
    }
    Ok(())
}

/// Generic complex over `k[t_ij : i < j]`, verified on construction.
pub fn generic_be_complex<F: Field>(field: &F, d: usize) -> Result<BeComplex<F>, PfaffError> {
    check_size(d)?;
    let tau = SkewMatrix::generic(field, d);
    let sigma = submax_pfaffians(&tau)?;
    let be = BeComplex { tau, sigma };
    let report = be.verify()?;
    if !report.tau_sigma_zero {
        return Err(PfaffError::NotAComplex { which: "tau*sigma" });
    }
    if !report.sigma_tau_zero {
        return Err(PfaffError::NotAComplex { which: "sigma^T*tau" });
    }
    Ok(be)
}

impl<F: Field> BeComplex<F> {
    pub fn size(&self) -> usize {
        self.tau.size()
    }

    pub fn field(&self) -> &F {
        self.tau.field()
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        self.tau.context()
    }

    /// `σ` as a `d x 1` matrix.
    pub fn sigma_column(&self) -> PolyMatrix<F> {
        self.sigma.iter().map(|s| vec![s.clone()]).collect()
    }

    /// `σ*` as a `1 x d` matrix.
    pub fn sigma_row(&self) -> PolyMatrix<F> {
        vec![self.sigma.clone()]
    }

    /// The differentials `[∂_1, ∂_2, ∂_3] = [σ*, τ, σ]`.
    pub fn maps(&self) -> [PolyMatrix<F>; 3] {
        [self.sigma_row(), self.tau.to_rows(), self.sigma_column()]
    }

    pub fn verify(&self) -> Result<BeReport, PfaffError> {
        let (f, ctx) = (self.field(), self.context());
        let [d1, d2, d3] = self.maps();
        let ts = poly_matmul(f, ctx, &d2, &d3)?;
        let st = poly_matmul(f, ctx, &d1, &d2)?;
        let d = self.size();
        Ok(BeReport {
            size: d,
            tau_sigma_zero: all_zero(&ts),
            sigma_tau_zero: all_zero(&st),
            sigma_nonzero: self.sigma.iter().any(|s| !s.is_zero()),
            ranks: [1, d, d, 1],
            term_counts: self.sigma.iter().map(Polynomial::num_terms).collect(),
        })
    }
}

/// The differentials after `t_ij ↦ images[k]`, `k` running over `i < j` in
/// lexicographic order, together with the common degree of the images.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecializedBe<F: Field> {
    pub degree: u32,
    pub maps: [PolyMatrix<F>; 3],
}

impl<F: Field> SpecializedBe<F> {
    /// Degree of the Pfaffians after specialization.
    pub fn sigma_degree(&self, size: usize) -> u32 {
        self.degree * (size as u32 - 1) / 2
    }
}

fn common_degree<F: Field>(be: &BeComplex<F>, images: &[Polynomial<F>]) -> Result<u32, PfaffError> {
    let names = be.context().names();
    if images.len() != names.len() {
        return Err(PfaffError::AssignmentLength {
            expected: names.len(),
            found: images.len(),
        });
    }
    let mut degree = None;
    for (p, name) in images.iter().zip(names) {
        if p.is_zero() {
            continue;
        }
        let e = p.degree().unwrap_or(0);
        if !p.is_homogeneous() || e == 0 || degree.is_some_and(|g| g != e) {
            return Err(PfaffError::Inhomogeneous { name: name.clone() });
        }
        degree = Some(e);
    }
    Ok(degree.unwrap_or(1))
}

fn substitute_matrix<F: Field>(m: &PolyMatrix<F>, images: &[Polynomial<F>]) -> Result<PolyMatrix<F>, PfaffError> {
    let cols = m.first().map_or(0, Vec::len);
    let flat = map_range(m.len() * cols, parallelism(), |k| {
        m[k / cols][k % cols].substitute(images)
    });
    let mut it = flat.into_iter();
    (0..m.len())
        .map(|_| it.by_ref().take(cols).map(|p| p.map_err(PfaffError::from)).collect())
        .collect()
}

fn substitute_all<F: Field>(be: &BeComplex<F>, images: &[Polynomial<F>]) -> Result<SpecializedBe<F>, PfaffError> {
    let degree = common_degree(be, images)?;
    let [d1, d2, d3] = be.maps();
    Ok(SpecializedBe {
        degree,
        maps: [
            substitute_matrix(&d1, images)?,
            substitute_matrix(&d2, images)?,
            substitute_matrix(&d3, images)?,
        ],
    })
}

/// Specialization into a polynomial ring; both composites are recomputed
/// there.
pub fn specialize_polys<F: Field>(be: &BeComplex<F>, images: &[Polynomial<F>]) -> Result<SpecializedBe<F>, PfaffError> {
    let out = substitute_all(be, images)?;
    let Some(first) = images.first() else {
        return Ok(out);
    };
    let (f, ctx) = (be.field(), first.context());
    let [d1, d2, d3] = &out.maps;
    if !all_zero(&poly_matmul(f, ctx, d2, d3)?) {
        return Err(PfaffError::NotAComplex { which: "tau*sigma" });
    }
    if !all_zero(&poly_matmul(f, ctx, d1, d2)?) {
        return Err(PfaffError::NotAComplex { which: "sigma^T*tau" });
    }
    Ok(out)
}

/// Specialization into a graded quotient algebra as a window
/// `∂_1, ∂_2, ∂_3` starting at position 1, with `C_0 = A`,
/// `C_1 = A(-em)^d`, `C_2 = A(-em-e)^d`, `C_3 = A(-2em-e)` for image
/// degree `e` and `m = (d-1)/2`. Composites are re-checked in `A`.
pub fn specialize<F: Field>(
    be: &BeComplex<F>,
    alg: &GradedAlgebra<F>,
    images: &[Polynomial<F>],
) -> Result<FreeComplex<F>, PfaffError> {
    let d = be.size();
    let out = substitute_all(be, images)?;
    let e = out.degree as i32;
    let m = out.sigma_degree(d) as i32;
    let c0 = FreeModule::new(vec![0]);
    let c1 = FreeModule::new(vec![m; d]);
    let c2 = FreeModule::new(vec![m + e; d]);
    let c3 = FreeModule::new(vec![2 * m + e]);
    let [d1, d2, d3] = &out.maps;
    let maps = vec![
        ModuleMap::from_polys(alg, c1.clone(), c0, d1)?,
        ModuleMap::from_polys(alg, c2.clone(), c1, d2)?,
        ModuleMap::from_polys(alg, c3, c2, d3)?,
    ];
    let complex = FreeComplex::new(1, maps, None)?;
    let check = complex.check(alg);
    if !check.is_complex {
        return Err(PfaffError::NotAComplex {
            which: if check.nonzero_composites.contains(&2) {
                "tau*sigma"
            } else {
                "sigma^T*tau"
            },
        });
    }
    Ok(complex)
}
