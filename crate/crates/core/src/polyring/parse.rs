use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalars::Field;

use super::{Monomial, PolyContext, PolyError, Polynomial};

/// Parses `text` into a polynomial over `ctx`.
///
/// Grammar: a sum of signed terms, each a `*`-separated product of factors;
/// a factor is an integer, a fraction `a/b`, or a variable with an optional
/// `^k` exponent. Whitespace is ignored.
pub fn parse_poly<F: Field>(field: &F, ctx: &Arc<PolyContext>, text: &str) -> Result<Polynomial<F>, PolyError> {
    let terms = parse_terms(text, |name| ctx.index_of(name))?;
    let mut p = Polynomial::zero(field, ctx);
    for (coef, factors) in terms {
        let mut m = Monomial::one(ctx.nvars());
        for (var, exp) in factors {
            m.0[var] += exp;
        }
        let c = field
            .from_rational(&coef)
            .map_err(|e| PolyError::Coefficient(e.to_string()))?;
        p.add_term(m, c);
    }
    Ok(p)
}

/// Shared tokenizer for commutative and noncommutative term syntax.
/// Returns `(coefficient, [(variable index, exponent)] in written order)`.
pub(crate) fn parse_terms(
    text: &str,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<(BigRational, Vec<(usize, u32)>)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut terms = Vec::new();
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(PolyError::Malformed {
            column: 1,
            message: "empty polynomial".into(),
        });
    }
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == chars.len() {
            break;
        }
        let mut sign = BigRational::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if !first {
            return Err(PolyError::Malformed {
                column: pos + 1,
                message: format!("expected '+' or '-', found '{}'", chars[pos]),
            });
        }
        first = false;
        let mut coef = sign;
        let mut factors = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos == chars.len() {
                return Err(PolyError::Malformed {
                    column: pos + 1,
                    message: "expected a factor".into(),
                });
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                let (num, next) = read_integer(&chars, pos);
                pos = next;
                skip_ws(&mut pos);
                let mut value = BigRational::from_integer(num);
                if pos < chars.len() && chars[pos] == '/' {
                    pos += 1;
                    skip_ws(&mut pos);
                    if pos == chars.len() || !chars[pos].is_ascii_digit() {
                        return Err(PolyError::Malformed {
                            column: pos + 1,
                            message: "expected a denominator".into(),
                        });
                    }
                    let (den, next) = read_integer(&chars, pos);
                    if den.is_zero() {
                        return Err(PolyError::Malformed {
                            column: pos + 1,
                            message: "zero denominator".into(),
                        });
                    }
                    pos = next;
                    value /= BigRational::from_integer(den);
                }
                coef *= value;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                    pos += 1;
                }
                let name: String = chars[start..pos].iter().collect();
                let var = lookup(&name).ok_or(PolyError::UnknownVariable {
                    name,
                    column: start + 1,
                })?;
                skip_ws(&mut pos);
                let mut exp = 1u32;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    if pos == chars.len() || !chars[pos].is_ascii_digit() {
                        return Err(PolyError::BadExponent { column: pos + 1 });
                    }
                    let (e, next) = read_integer(&chars, pos);
                    let next_is_frac = {
                        let mut q = next;
                        while q < chars.len() && chars[q].is_whitespace() {
                            q += 1;
                        }
                        q < chars.len() && (chars[q] == '/' || chars[q] == '.')
                    };
                    if next_is_frac {
                        return Err(PolyError::BadExponent { column: pos + 1 });
                    }
                    exp = u32::try_from(e).map_err(|_| PolyError::BadExponent { column: pos + 1 })?;
                    pos = next;
                }
                factors.push((var, exp));
            } else {
                return Err(PolyError::Malformed {
                    column: pos + 1,
                    message: format!("unexpected '{c}'"),
                });
            }
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        terms.push((coef, factors));
    }
    Ok(terms)
}

fn read_integer(chars: &[char], mut pos: usize) -> (BigInt, usize) {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    let s: String = chars[start..pos].iter().collect();
    (s.parse().expect("digits"), pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, RationalField};

    fn s_ctx() -> Arc<PolyContext> {
        PolyContext::new(["X1", "X2", "X3", "X4", "X5"]).unwrap()
    }

    #[test]
    fn parses_example_relations() {
        let f = RationalField;
        let p = parse_poly(&f, &s_ctx(), "2*X1*X3 + X2*X3").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Monomial(vec![1, 0, 1, 0, 0])), f.from_i64(2));
        let q = parse_poly(&f, &s_ctx(), "X3^2 + 2*X1*X5 - X2*X5").unwrap();
        assert_eq!(q.coeff(&Monomial(vec![0, 1, 0, 0, 1])), f.from_i64(-1));
        assert_eq!(q.degree(), Some(2));
        assert!(q.is_homogeneous());
    }

    #[test]
    fn fractional_coefficient() {
        let ctx = PolyContext::new(["x"]).unwrap();
        let p = parse_poly(&RationalField, &ctx, "1/2*x^2").unwrap();
        assert_eq!(p.to_string(), "1/2*x^2");
        let fp = PrimeField::new(7).unwrap();
        let p7 = parse_poly(&fp, &ctx, "1/2*x^2").unwrap();
        assert_eq!(p7.to_string(), "4*x^2");
    }

    #[test]
    fn errors_carry_positions() {
        let f = RationalField;
        let ctx = s_ctx();
        assert!(matches!(
            parse_poly(&f, &ctx, "X1*Y2"),
            Err(PolyError::UnknownVariable { column: 4, .. })
        ));
        assert!(matches!(
            parse_poly(&f, &ctx, "X1^x"),
            Err(PolyError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_poly(&f, &ctx, "X1^1/2"),
            Err(PolyError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_poly(&f, &ctx, "X1 X2"),
            Err(PolyError::Malformed { .. })
        ));
        assert!(matches!(
            parse_poly(&f, &ctx, "X1 + "),
            Err(PolyError::Malformed { .. })
        ));
        assert!(matches!(
            parse_poly(&f, &ctx, "3 # 4"),
            Err(PolyError::Malformed { .. })
        ));
    }

    #[test]
    fn canonical_print_roundtrips() {
        let f = RationalField;
        let ctx = s_ctx();
        for text in ["X3^2 + 2*X1*X5 - X2*X5", "-X1^2 + 3/4*X2*X4 - 7", "X5"] {
            let p = parse_poly(&f, &ctx, text).unwrap();
            let again = parse_poly(&f, &ctx, &p.to_string()).unwrap();
            assert_eq!(p, again);
        }
    }
}
