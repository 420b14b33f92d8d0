use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::ScalarError;

/// Which exact field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rational,
    Prime(u32),
}

impl FieldDesc {
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDesc::Rational => 0,
            FieldDesc::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A field-tagged exact value, used at API boundaries where the field is
/// only known at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn desc(&self) -> FieldDesc {
        match self {
            Scalar::Rational(_) => FieldDesc::Rational,
            Scalar::Prime { modulus, .. } => FieldDesc::Prime(*modulus),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// An exact field, used as a value-level descriptor: elements are plain data
/// and all arithmetic goes through the field object.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn desc(&self) -> FieldDesc;

    fn characteristic(&self) -> u32 {
        self.desc().characteristic()
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Image of a rational number; fails if the denominator vanishes in
    /// the field.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, ScalarError>;

    fn to_scalar(&self, a: &Self::Elem) -> Scalar;

    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, ScalarError> {
        if s.desc() != self.desc() {
            return Err(ScalarError::FieldMismatch {
                expected: self.desc(),
                found: s.desc(),
            });
        }
        match s {
            Scalar::Rational(q) => self.from_rational(q),
            Scalar::Prime { value, .. } => Ok(self.from_i64(*value as i64)),
        }
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.to_scalar(a).to_string()
    }

    /// `dst[k] -= f * src[k]` for all `k`.
    fn sub_mul_assign(&self, dst: &mut [Self::Elem], f: &Self::Elem, src: &[Self::Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                let t = self.mul(f, s);
                *d = self.sub(d, &t);
            }
        }
    }

    fn scale_assign(&self, row: &mut [Self::Elem], f: &Self::Elem) {
        for x in row.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, f);
            }
        }
    }
}

/// The rationals, backed by arbitrary-precision integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn desc(&self) -> FieldDesc {
        FieldDesc::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.numer().is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn from_rational(&self, q: &BigRational) -> Result<BigRational, ScalarError> {
        Ok(q.clone())
    }

    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }

    fn sub_mul_assign(&self, dst: &mut [BigRational], f: &BigRational, src: &[BigRational]) {
        debug_assert_eq!(dst.len(), src.len());
        // integer multipliers skip the gcd normalisation of a full product
        let int_f = f.is_integer().then(|| f.numer().clone());
        for (d, s) in dst.iter_mut().zip(src) {
            if s.numer().is_zero() {
                continue;
            }
            let t = match &int_f {
                Some(n) if s.is_integer() => BigRational::from_integer(n * s.numer()),
                _ => f * s,
            };
            if d.numer().is_zero() {
                *d = -t;
            } else {
                *d -= t;
            }
        }
    }
}

/// The prime field `F_p` for an odd or even prime `p < 2^31`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u32,
    // floor(2^64 / p), for Barrett reduction of products
    barrett: u64,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

/// Default modulus for the modular fast path.
pub const DEFAULT_PRIME: u32 = 32003;

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, ScalarError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(PrimeField {
            p,
            barrett: u64::MAX / p as u64,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline(always)]
    fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        while r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(acc as u64 * base as u64);
            }
            base = self.reduce(base as u64 * base as u64);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits")
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn desc(&self) -> FieldDesc {
        FieldDesc::Prime(self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.p
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p as u64 - 2)
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn from_rational(&self, q: &BigRational) -> Result<u32, ScalarError> {
        let den = self.from_bigint(q.denom());
        if den == 0 {
            return Err(ScalarError::DenominatorVanishes {
                value: q.to_string(),
                modulus: self.p,
            });
        }
        Ok(self.mul(&self.from_bigint(q.numer()), &self.inv(&den)))
    }

    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Prime {
            value: *a,
            modulus: self.p,
        }
    }

    fn sub_mul_assign(&self, dst: &mut [u32], f: &u32, src: &[u32]) {
        debug_assert_eq!(dst.len(), src.len());
        if *f == 0 {
            return;
        }
        let g = (self.p - f) as u64;
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                *d = self.reduce(*d as u64 + g * *s as u64);
            }
        }
    }

    fn scale_assign(&self, row: &mut [u32], f: &u32) {
        let f = *f as u64;
        for x in row.iter_mut() {
            *x = self.reduce(*x as u64 * f);
        }
    }
}

/// Rational view of a scalar, used when moving data between fields.
/// Prime-field values lift to their representative in `[0, p)`.
pub fn rational_of(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rational(q) => q.clone(),
        Scalar::Prime { value, .. } => BigRational::from_integer(BigInt::from(*value)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = RationalField;
        let a = q.from_rational(&BigRational::new(4.into(), (-6).into())).unwrap();
        assert_eq!(a, BigRational::new((-2).into(), 3.into()));
        assert!(a.denom() > &BigInt::zero());
        let b = q.add(&a, &q.from_i64(1));
        assert_eq!(b.to_string(), "1/3");
    }

    #[test]
    fn prime_field_inverse_and_reduction() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 17, 32002, 12345] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 32002);
        let half = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
    }

    #[test]
    fn prime_field_rejects_composites_and_bad_denominators() {
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(1).is_err());
        let f = PrimeField::new(3).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert!(matches!(
            f.from_rational(&third),
            Err(ScalarError::DenominatorVanishes { .. })
        ));
    }

    #[test]
    fn scalar_field_mismatch() {
        let f = PrimeField::new(7).unwrap();
        let err = f.from_scalar(&Scalar::rational(1, 2)).unwrap_err();
        assert!(err.to_string().contains("field mismatch"));
    }

    #[test]
    fn barrett_matches_remainder() {
        let f = PrimeField::new(2147483647).unwrap();
        let xs = [0u64, 1, 2147483646, 4611686014132420609, u32::MAX as u64 * 12345];
        for x in xs {
            assert_eq!(f.reduce(x) as u64, x % 2147483647);
        }
    }
}
