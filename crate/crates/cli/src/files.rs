//! Line-oriented input files: algebras (with optional module
//! presentations), complexes over an algebra, and entry assignments for
//! Pfaffian complexes. `#` starts a comment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use tacalc_core::algebra::{AlgebraError, AlgebraSpec, GradedAlgebra};
use tacalc_core::homology::{FreeModule, ModuleMap, Presentation};
use tacalc_core::polyring::{generic_name, parse_poly, PolyContext, PolyError, Polynomial};
use tacalc_core::scalars::{Field, FieldDesc, PrimeField, RationalField};
use tacalc_core::totalacyclicity::FreeComplex;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}: {}", self.path, self.line, self.column, self.message)
    }
}

/// One meaningful line: 1-based number, the keyword, and the rest with the
/// 1-based column where it starts.
struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
    rest_column: usize,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = body.len() - trimmed.len();
        let kw_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let after = &trimmed[kw_len..];
        let rest = after.trim_start();
        let rest_offset = lead + kw_len + (after.len() - rest.len());
        out.push(Line {
            number: k + 1,
            keyword: &trimmed[..kw_len],
            rest: rest.trim_end(),
            rest_column: body[..rest_offset].chars().count() + 1,
        });
    }
    out
}

struct Ctx<'a> {
    path: &'a str,
}

impl Ctx<'_> {
    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse(ParseError {
            path: self.path.to_string(),
            line,
            column,
            message: message.into(),
        })
    }

    fn poly<F: Field>(
        &self,
        field: &F,
        ctx: &Arc<PolyContext>,
        text: &str,
        line: usize,
        column: usize,
    ) -> Result<Polynomial<F>, CliError> {
        parse_poly(field, ctx, text).map_err(|e| {
            let inner = match &e {
                PolyError::UnknownVariable { column, .. }
                | PolyError::Malformed { column, .. }
                | PolyError::BadExponent { column } => *column,
                _ => 1,
            };
            self.err(line, column + inner - 1, e.to_string())
        })
    }
}

/// Field named by the first `field` line, if any.
pub fn declared_field(text: &str, path: &str) -> Result<FieldDesc, CliError> {
    let c = Ctx { path };
    for l in lines(text) {
        if l.keyword != "field" {
            continue;
        }
        let words: Vec<&str> = l.rest.split_whitespace().collect();
        return match words.as_slice() {
            ["Q"] => Ok(FieldDesc::Rational),
            ["F", p] => {
                let p: u32 = p
                    .parse()
                    .map_err(|_| c.err(l.number, l.rest_column, "expected a prime after 'F'"))?;
                PrimeField::new(p).map_err(|e| c.err(l.number, l.rest_column, e.to_string()))?;
                Ok(FieldDesc::Prime(p))
            }
            _ => Err(c.err(l.number, l.rest_column, "expected 'field Q' or 'field F <prime>'")),
        };
    }
    Ok(FieldDesc::Rational)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleDecl<F: Field> {
    pub name: String,
    pub degrees: Vec<i32>,
    /// Relation columns, one entry per generator.
    pub relations: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> ModuleDecl<F> {
    pub fn presentation(&self, alg: &GradedAlgebra<F>) -> Result<Presentation<F>, CliError> {
        Ok(Presentation::from_polys(alg, self.degrees.clone(), &self.relations)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile<F: Field> {
    pub spec: AlgebraSpec<F>,
    pub modules: Vec<ModuleDecl<F>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn parse_algebra<F: Field>(field: &F, text: &str, path: &str) -> Result<AlgebraFile<F>, CliError> {
    let c = Ctx { path };
    let mut ctx: Option<Arc<PolyContext>> = None;
    let mut rels = Vec::new();
    let mut rel_lines = Vec::new();
    let mut modules: Vec<ModuleDecl<F>> = Vec::new();
    for l in lines(text) {
        match l.keyword {
            "field" => {}
            "vars" => {
                if ctx.is_some() {
                    return Err(c.err(l.number, 1, "variables declared twice"));
                }
                let names: Vec<&str> = l.rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(c.err(l.number, l.rest_column, "expected at least one variable"));
                }
                ctx = Some(PolyContext::new(names).map_err(|e| c.err(l.number, l.rest_column, e.to_string()))?);
            }
            "rel" => {
                let ctx = ctx.as_ref().ok_or_else(|| c.err(l.number, 1, "'rel' before 'vars'"))?;
                rels.push(c.poly(field, ctx, l.rest, l.number, l.rest_column)?);
                rel_lines.push(l.number);
            }
            "module" => {
                let words: Vec<&str> = l.rest.split_whitespace().collect();
                let [name, "degrees", degs @ ..] = words.as_slice() else {
                    return Err(c.err(l.number, l.rest_column, "expected 'module <name> degrees <d>+'"));
                };
                let degrees = degs
                    .iter()
                    .map(|d| d.parse::<i32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| c.err(l.number, l.rest_column, "generator degrees must be integers"))?;
                if degrees.is_empty() {
                    return Err(c.err(l.number, l.rest_column, "a module needs at least one generator"));
                }
                if modules.iter().any(|m| m.name == *name) {
                    return Err(c.err(l.number, l.rest_column, format!("module '{name}' declared twice")));
                }
                modules.push(ModuleDecl {
                    name: name.to_string(),
                    degrees,
                    relations: Vec::new(),
                });
            }
            "relation" => {
                let ctx = ctx
                    .as_ref()
                    .ok_or_else(|| c.err(l.number, 1, "'relation' before 'vars'"))?;
                let m = modules
                    .last_mut()
                    .ok_or_else(|| c.err(l.number, 1, "'relation' outside a module"))?;
                let mut col = Vec::new();
                let mut offset = 0;
                for part in l.rest.split(',') {
                    let lead = part.len() - part.trim_start().len();
                    let column = l.rest_column + l.rest[..offset + lead].chars().count();
                    col.push(c.poly(field, ctx, part.trim(), l.number, column)?);
                    offset += part.len() + 1;
                }
                if col.len() != m.degrees.len() {
                    return Err(c.err(
                        l.number,
                        l.rest_column,
                        format!(
                            "expected {} comma-separated entries, found {}",
                            m.degrees.len(),
                            col.len()
                        ),
                    ));
                }
                m.relations.push(col);
            }
            other => return Err(c.err(l.number, 1, format!("unknown keyword '{other}'"))),
        }
    }
    let ctx = ctx.ok_or_else(|| c.err(1, 1, "missing 'vars' line"))?;
    let spec = AlgebraSpec::new(field, &ctx, rels).map_err(|e| match e {
        AlgebraError::Inhomogeneous { index } | AlgebraError::LowDegree { index, .. } => {
            c.err(rel_lines[index], 1, e.to_string())
        }
        other => other.into(),
    })?;
    Ok(AlgebraFile { spec, modules })
}

impl<F: Field> AlgebraFile<F> {
    pub fn module(&self, name: &str) -> Result<&ModuleDecl<F>, CliError> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CliError::Usage(format!("no module named '{name}' in the algebra file")))
    }

    pub fn build(&self, degree_cap: u32) -> Result<GradedAlgebra<F>, CliError> {
        Ok(GradedAlgebra::build(&self.spec, degree_cap)?)
    }
}

/// Canonical text of an algebra file; parsing it gives back the same data.
pub fn render_algebra<F: Field>(file: &AlgebraFile<F>) -> String {
    let spec = &file.spec;
    let mut out = String::new();
    match spec.desc() {
        FieldDesc::Rational => out.push_str("field Q\n"),
        FieldDesc::Prime(p) => {
            let _ = writeln!(out, "field F {p}");
        }
    }
    let _ = writeln!(out, "vars {}", spec.var_names().join(" "));
    for r in spec.relations() {
        let _ = writeln!(out, "rel {r}");
    }
    for m in &file.modules {
        let degs: Vec<String> = m.degrees.iter().map(i32::to_string).collect();
        let _ = writeln!(out, "module {} degrees {}", m.name, degs.join(" "));
        for col in &m.relations {
            let entries: Vec<String> = col.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "relation {}", entries.join(", "));
        }
    }
    out
}

/// The field a command runs over: `--prime` wins over the file's `field`
/// line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Declared,
    Prime(u32),
}

impl FieldChoice {
    pub fn resolve(self, declared: FieldDesc) -> FieldDesc {
        match self {
            FieldChoice::Declared => declared,
            FieldChoice::Prime(p) => FieldDesc::Prime(p),
        }
    }
}

pub enum AnyAlgebra {
    Rational(AlgebraFile<RationalField>),
    Prime(AlgebraFile<PrimeField>),
}

pub fn load_algebra_text(text: &str, path: &str, choice: FieldChoice) -> Result<AnyAlgebra, CliError> {
    match choice.resolve(declared_field(text, path)?) {
        FieldDesc::Rational => Ok(AnyAlgebra::Rational(parse_algebra(&RationalField, text, path)?)),
        FieldDesc::Prime(p) => Ok(AnyAlgebra::Prime(parse_algebra(&PrimeField::new(p)?, text, path)?)),
    }
}

pub fn load_algebra(path: &Path, choice: FieldChoice) -> Result<AnyAlgebra, CliError> {
    load_algebra_text(&read(path)?, &path.display().to_string(), choice)
}

pub fn load_algebra_in<F: Field>(field: &F, path: &Path) -> Result<AlgebraFile<F>, CliError> {
    let text = read(path)?;
    parse_algebra(field, &text, &path.display().to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapDecl<F: Field> {
    pub name: String,
    pub source: String,
    pub target: String,
    /// `entries[i][j]`: target generator `i`, source generator `j`.
    pub entries: Vec<Vec<Polynomial<F>>>,
}

/// A complex file. Maps are listed in order `∂_lo, ∂_{lo+1}, ...`; the
/// source of each map is the target of the next.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFile<F: Field> {
    pub algebra_path: PathBuf,
    pub algebra: AlgebraFile<F>,
    pub lo: i32,
    pub modules: Vec<(String, Vec<i32>)>,
    pub maps: Vec<MapDecl<F>>,
    pub period: Option<usize>,
}

/// Splits `[[a, b], [c, d]]` into rows of `(entry text, line, column)`.
fn parse_matrix(c: &Ctx<'_>, chars: &[(char, usize, usize)]) -> Result<Vec<Vec<(String, usize, usize)>>, CliError> {
    let mut rows = Vec::new();
    let mut depth = 0;
    let mut row: Vec<(String, usize, usize)> = Vec::new();
    let mut cur: Option<(String, usize, usize)> = None;
    let mut finished = false;
    for &(ch, line, col) in chars {
        if finished {
            if !ch.is_whitespace() {
                return Err(c.err(line, col, "text after the matrix"));
            }
            continue;
        }
        match ch {
            '[' => {
                depth += 1;
                if depth > 2 {
                    return Err(c.err(line, col, "matrices nest two brackets deep"));
                }
            }
            ']' | ',' if depth == 2 => {
                let (text, l, k) = cur.take().ok_or_else(|| c.err(line, col, "empty matrix entry"))?;
                row.push((text, l, k));
                if ch == ']' {
                    depth -= 1;
                    rows.push(std::mem::take(&mut row));
                }
            }
            ']' if depth == 1 => {
                depth = 0;
                finished = true;
            }
            ',' if depth == 1 => {}
            _ if depth == 2 => match &mut cur {
                Some((text, _, _)) => text.push(ch),
                None if ch.is_whitespace() => {}
                None => cur = Some((ch.to_string(), line, col)),
            },
            _ if ch.is_whitespace() => {}
            _ => return Err(c.err(line, col, format!("unexpected '{ch}' in matrix"))),
        }
    }
    if !finished {
        let (line, col) = chars.last().map_or((1, 1), |&(_, l, k)| (l, k));
        return Err(c.err(line, col, "unterminated matrix"));
    }
    Ok(rows)
}

pub fn parse_complex<F: Field>(field: &F, text: &str, path: &Path) -> Result<ComplexFile<F>, CliError> {
    let shown = path.display().to_string();
    let c = Ctx { path: &shown };
    let mut algebra: Option<(PathBuf, AlgebraFile<F>)> = None;
    let mut lo = 1;
    let mut modules: Vec<(String, Vec<i32>)> = Vec::new();
    let mut maps: Vec<MapDecl<F>> = Vec::new();
    let mut period = None;
    // a map header may be followed by matrix lines that are not keywords
    let all: Vec<Line<'_>> = lines(text);
    let mut k = 0;
    while k < all.len() {
        let l = &all[k];
        k += 1;
        match l.keyword {
            "algebra" => {
                let rel = Path::new(l.rest);
                let full = match path.parent() {
                    Some(dir) if rel.is_relative() => dir.join(rel),
                    _ => rel.to_path_buf(),
                };
                algebra = Some((full.clone(), load_algebra_in(field, &full)?));
            }
            "start" => {
                lo = l
                    .rest
                    .parse()
                    .map_err(|_| c.err(l.number, l.rest_column, "expected an integer"))?;
            }
            "module" => {
                let words: Vec<&str> = l.rest.split_whitespace().collect();
                let [name, "degrees", degs @ ..] = words.as_slice() else {
                    return Err(c.err(l.number, l.rest_column, "expected 'module <name> degrees <d>*'"));
                };
                let degrees = degs
                    .iter()
                    .map(|d| d.parse::<i32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| c.err(l.number, l.rest_column, "generator degrees must be integers"))?;
                modules.push((name.to_string(), degrees));
            }
            "periodic" => {
                period = Some(
                    l.rest
                        .parse()
                        .map_err(|_| c.err(l.number, l.rest_column, "expected a period length"))?,
                );
            }
            "map" => {
                let (_, alg) = algebra
                    .as_ref()
                    .ok_or_else(|| c.err(l.number, 1, "'map' before 'algebra'"))?;
                let bracket = l.rest.find('[');
                let header = &l.rest[..bracket.unwrap_or(l.rest.len())];
                let words: Vec<&str> = header.split_whitespace().collect();
                let [name, "from", source, "to", target] = words.as_slice() else {
                    return Err(c.err(l.number, l.rest_column, "expected 'map <name> from <M> to <N> [[...]]'"));
                };
                let mut chars: Vec<(char, usize, usize)> = Vec::new();
                if let Some(b) = bracket {
                    let start = l.rest_column + l.rest[..b].chars().count();
                    chars.extend(l.rest[b..].chars().enumerate().map(|(i, ch)| (ch, l.number, start + i)));
                }
                let balanced = |cs: &[(char, usize, usize)]| {
                    let open = cs.iter().filter(|x| x.0 == '[').count();
                    open > 0 && open == cs.iter().filter(|x| x.0 == ']').count()
                };
                // matrix continuation lines start with '[' or ',' or a polynomial
                while !balanced(&chars) && k < all.len() {
                    let m = &all[k];
                    k += 1;
                    let line_text = text.lines().nth(m.number - 1).unwrap_or("");
                    let body = line_text.split('#').next().unwrap_or("");
                    chars.push((' ', m.number, 1));
                    chars.extend(body.chars().enumerate().map(|(i, ch)| (ch, m.number, i + 1)));
                }
                let rows = parse_matrix(&c, &chars)?;
                let ctx = alg.spec.context();
                let entries = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|(t, line, col)| c.poly(field, ctx, t.trim(), line, col))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let rank = |n: &str| {
                    modules
                        .iter()
                        .find(|(m, _)| m == n)
                        .map(|(_, d)| d.len())
                        .ok_or_else(|| c.err(l.number, l.rest_column, format!("unknown module '{n}'")))
                };
                let (sr, tr) = (rank(source)?, rank(target)?);
                if entries.len() != tr || entries.iter().any(|r| r.len() != sr) {
                    return Err(c.err(
                        l.number,
                        l.rest_column,
                        format!("matrix must be {tr}x{sr} (target rank x source rank)"),
                    ));
                }
                maps.push(MapDecl {
                    name: name.to_string(),
                    source: source.to_string(),
                    target: target.to_string(),
                    entries,
                });
            }
            other => return Err(c.err(l.number, 1, format!("unknown keyword '{other}'"))),
        }
    }
    let (algebra_path, algebra) = algebra.ok_or_else(|| c.err(1, 1, "missing 'algebra' line"))?;
    if maps.is_empty() {
        return Err(c.err(1, 1, "a complex needs at least one map"));
    }
    Ok(ComplexFile {
        algebra_path,
        algebra,
        lo,
        modules,
        maps,
        period,
    })
}

impl<F: Field> ComplexFile<F> {
    fn degrees(&self, name: &str) -> FreeModule {
        let (_, d) = self
            .modules
            .iter()
            .find(|(m, _)| m == name)
            .expect("checked at parse time");
        FreeModule::new(d.clone())
    }

    pub fn build(&self, alg: &GradedAlgebra<F>) -> Result<FreeComplex<F>, CliError> {
        let maps = self
            .maps
            .iter()
            .map(|m| ModuleMap::from_polys(alg, self.degrees(&m.source), self.degrees(&m.target), &m.entries))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FreeComplex::new(self.lo, maps, self.period)?)
    }
}

pub enum AnyComplex {
    Rational(ComplexFile<RationalField>),
    Prime(ComplexFile<PrimeField>),
}

/// The field comes from the referenced algebra file unless overridden.
pub fn load_complex(path: &Path, choice: FieldChoice) -> Result<AnyComplex, CliError> {
    let text = read(path)?;
    let shown = path.display().to_string();
    let declared = match lines(&text).iter().find(|l| l.keyword == "algebra") {
        Some(l) => {
            let rel = Path::new(l.rest);
            let full = path.parent().map_or(rel.to_path_buf(), |d| d.join(rel));
            declared_field(&read(&full)?, &full.display().to_string())?
        }
        None => return Err(Ctx { path: &shown }.err(1, 1, "missing 'algebra' line")),
    };
    match choice.resolve(declared) {
        FieldDesc::Rational => Ok(AnyComplex::Rational(parse_complex(&RationalField, &text, path)?)),
        FieldDesc::Prime(p) => Ok(AnyComplex::Prime(parse_complex(&PrimeField::new(p)?, &text, path)?)),
    }
}

/// Target of a Pfaffian specialization: a quotient algebra or a bare
/// polynomial ring.
pub enum Target<F: Field> {
    Algebra(AlgebraFile<F>),
    Ring(Arc<PolyContext>),
}

/// `t_ij = <polynomial>` lines, `i < j` (1-based), plus either
/// `algebra <path>` or `vars <names>`. Unlisted entries map to zero.
pub struct Assignment<F: Field> {
    pub target: Target<F>,
    pub images: Vec<Polynomial<F>>,
}

pub fn parse_assignment<F: Field>(field: &F, text: &str, path: &Path, size: usize) -> Result<Assignment<F>, CliError> {
    let shown = path.display().to_string();
    let c = Ctx { path: &shown };
    let all = lines(text);
    let mut target = None;
    for l in &all {
        match l.keyword {
            "algebra" => {
                let rel = Path::new(l.rest);
                let full = path.parent().map_or(rel.to_path_buf(), |d| d.join(rel));
                target = Some(Target::Algebra(load_algebra_in(field, &full)?));
            }
            "vars" => {
                let names: Vec<&str> = l.rest.split_whitespace().collect();
                let ctx = PolyContext::new(names).map_err(|e| c.err(l.number, l.rest_column, e.to_string()))?;
                target = Some(Target::Ring(ctx));
            }
            _ => {}
        }
    }
    let target = target.ok_or_else(|| c.err(1, 1, "missing 'algebra' or 'vars' line"))?;
    let ctx = match &target {
        Target::Algebra(a) => a.spec.context().clone(),
        Target::Ring(ctx) => ctx.clone(),
    };
    let names: Vec<String> = (0..size)
        .flat_map(|i| (i + 1..size).map(move |j| generic_name(i, j)))
        .collect();
    let mut images = vec![Polynomial::zero(field, &ctx); names.len()];
    let mut seen = vec![false; names.len()];
    let raw: Vec<&str> = text.lines().collect();
    for l in &all {
        if matches!(l.keyword, "algebra" | "vars" | "field") {
            continue;
        }
        let body = raw[l.number - 1].split('#').next().unwrap_or("");
        let (lhs, rhs) = body
            .split_once('=')
            .ok_or_else(|| c.err(l.number, 1, "expected 't_ij = <polynomial>'"))?;
        let lhs = lhs.trim();
        let k = names.iter().position(|n| n == lhs).ok_or_else(|| {
            c.err(
                l.number,
                1,
                format!("'{lhs}' is not an entry t_ij with i < j <= {size}"),
            )
        })?;
        if std::mem::replace(&mut seen[k], true) {
            return Err(c.err(l.number, 1, format!("'{lhs}' assigned twice")));
        }
        let column = body.len() - rhs.len() + (rhs.len() - rhs.trim_start().len());
        let column = body[..column].chars().count() + 1;
        images[k] = c.poly(field, &ctx, rhs.trim(), l.number, column)?;
    }
    Ok(Assignment { target, images })
}

pub fn load_assignment<F: Field>(field: &F, path: &Path, size: usize) -> Result<Assignment<F>, CliError> {
    parse_assignment(field, &read(path)?, path, size)
}
