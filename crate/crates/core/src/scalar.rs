//! Exact field elements over ℚ, ℚ(i) and prime fields GF(p).
//!
//! Every [`Scalar`] carries its field. Values are kept canonical after each
//! operation: reduced fractions with positive denominator, reduced Gaussian
//! fractions, and least nonnegative residues.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible prime modulus is below this bound.
pub const MAX_PRIME: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldId, FieldId),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^62")]
    NotPrime(u64),
    #[error("cannot parse scalar {text:?} over {field}")]
    Parse { text: String, field: FieldId },
    #[error("denominator {0} is not invertible modulo {1}")]
    NotInvertible(BigInt, u64),
}

/// The ground field of the polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldId {
    Q,
    QI,
    Fp(u64),
}

impl FieldId {
    pub fn fp(p: u64) -> Result<FieldId, ScalarError> {
        if p < MAX_PRIME && is_prime_u64(p) {
            Ok(FieldId::Fp(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// 0 for the characteristic-zero fields.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldId::Fp(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_i64(*self, n)
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldId::Q => write!(f, "q"),
            FieldId::QI => write!(f, "qi"),
            FieldId::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldId {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "q" => Ok(FieldId::Q),
            "qi" => Ok(FieldId::QI),
            _ => {
                let digits = t
                    .strip_prefix("fp:")
                    .or_else(|| t.strip_prefix("gf:"))
                    .ok_or_else(|| ScalarError::Parse {
                        text: s.to_string(),
                        field: FieldId::Q,
                    })?;
                let p: u64 = digits.parse().map_err(|_| ScalarError::Parse {
                    text: s.to_string(),
                    field: FieldId::Q,
                })?;
                FieldId::fp(p)
            }
        }
    }
}

/// Gaussian rational `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    QI(Gaussian),
    Fp { v: u64, p: u64 },
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    if p <= (1 << 32) {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue via Fermat.
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mr = |a: u64| -> bool {
        let mul = |x: u64, y: u64| ((x as u128 * y as u128) % n as u128) as u64;
        let mut x = 1u64;
        let mut base = a % n;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = mul(x, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                return true;
            }
        }
        false
    };
    SMALL.iter().all(|&a| mr(a))
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

impl Scalar {
    pub fn zero(field: FieldId) -> Scalar {
        match field {
            FieldId::Q => Scalar::Q(BigRational::zero()),
            FieldId::QI => Scalar::QI(Gaussian {
                re: BigRational::zero(),
                im: BigRational::zero(),
            }),
            FieldId::Fp(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(field: FieldId) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldId, n: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: FieldId, n: &BigInt) -> Scalar {
        match field {
            FieldId::Q => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldId::QI => Scalar::QI(Gaussian {
                re: BigRational::from_integer(n.clone()),
                im: BigRational::zero(),
            }),
            FieldId::Fp(p) => Scalar::Fp {
                v: reduce_bigint(n, p),
                p,
            },
        }
    }

    /// Image of a rational number in `field`.
    pub fn from_rational(field: FieldId, q: &BigRational) -> Result<Scalar, ScalarError> {
        match field {
            FieldId::Q => Ok(Scalar::Q(q.clone())),
            FieldId::QI => Ok(Scalar::QI(Gaussian {
                re: q.clone(),
                im: BigRational::zero(),
            })),
            FieldId::Fp(p) => {
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(ScalarError::NotInvertible(q.denom().clone(), p));
                }
                let num = reduce_bigint(q.numer(), p);
                Ok(Scalar::Fp {
                    v: mulmod(num, invmod(den, p), p),
                    p,
                })
            }
        }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::QI(Gaussian { re, im })
    }

    /// The imaginary unit; only exists in ℚ(i).
    pub fn imaginary_unit() -> Scalar {
        Scalar::gaussian(BigRational::zero(), BigRational::one())
    }

    pub fn field(&self) -> FieldId {
        match self {
            Scalar::Q(_) => FieldId::Q,
            Scalar::QI(_) => FieldId::QI,
            Scalar::Fp { p, .. } => FieldId::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::QI(g) => g.re.is_zero() && g.im.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::QI(g) => g.re.is_one() && g.im.is_zero(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Rational value when the element lies in ℚ (or ℚ ⊂ ℚ(i)).
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(q) => Some(q.clone()),
            Scalar::QI(g) if g.im.is_zero() => Some(g.re.clone()),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            _ => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::QI(a), Scalar::QI(b)) => Scalar::gaussian(&a.re + &b.re, &a.im + &b.im),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => {
                let s = a + b;
                Scalar::Fp {
                    v: if s >= *p { s - p } else { s },
                    p: *p,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::QI(a), Scalar::QI(b)) => Scalar::gaussian(&a.re - &b.re, &a.im - &b.im),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: if a >= b { a - b } else { a + p - b },
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::QI(a), Scalar::QI(b)) => Scalar::gaussian(
                &a.re * &b.re - &a.im * &b.im,
                &a.re * &b.im + &a.im * &b.re,
            ),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: mulmod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::QI(a) => {
                let norm = &a.re * &a.re + &a.im * &a.im;
                Scalar::gaussian(&a.re / &norm, -(&a.im / &norm))
            }
            Scalar::Fp { v, p } => Scalar::Fp {
                v: invmod(*v, *p),
                p: *p,
            },
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate in ℚ(i); identity elsewhere.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::QI(g) => Scalar::gaussian(g.re.clone(), -g.im.clone()),
            other => other.clone(),
        }
    }

    /// Reduction ℚ → GF(p). Fails when p divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Q(q) => Scalar::from_rational(FieldId::Fp(p), q),
            Scalar::Fp { v, p: q } if *q == p => Ok(Scalar::Fp { v: *v, p }),
            other => Err(ScalarError::FieldMismatch(other.field(), FieldId::Fp(p))),
        }
    }

    /// Text form: `a/b`, `a/b+c/d*i`, or a residue.
    pub fn parse(field: FieldId, text: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse {
            text: text.to_string(),
            field,
        };
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if let Some(body) = t.strip_suffix('i') {
            if field != FieldId::QI {
                return Err(err());
            }
            // split "re±im*" at the last sign that is not the leading one
            let body = body.strip_suffix('*').unwrap_or(body);
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last();
            let (re, im) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                other => other,
            };
            let re = parse_rational(re).ok_or_else(err)?;
            let im = parse_rational(im.trim_start_matches('+')).ok_or_else(err)?;
            return Ok(Scalar::gaussian(re, im));
        }
        let q = parse_rational(&t).ok_or_else(err)?;
        Scalar::from_rational(field, &q)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.trim_start_matches('+').parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{}", fmt_rational(q)),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::QI(g) => {
                if g.im.is_zero() {
                    return write!(f, "{}", fmt_rational(&g.re));
                }
                let im = if g.im.is_one() {
                    "i".to_string()
                } else if (-&g.im).is_one() {
                    "-i".to_string()
                } else {
                    format!("{}*i", fmt_rational(&g.im))
                };
                if g.re.is_zero() {
                    write!(f, "{im}")
                } else if g.im.is_negative() {
                    write!(f, "{}{}", fmt_rational(&g.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(&g.re), im)
                }
            }
        }
    }
}

impl Scalar {
    /// True when the printed form starts with a minus sign and has no other
    /// sign, so that a polynomial printer may pull the sign out.
    pub(crate) fn is_negative_real(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::QI(g) => g.im.is_zero() && g.re.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    /// Numerator/denominator pair over ℤ for rational values.
    pub fn as_ratio(&self) -> Option<(BigInt, BigInt)> {
        self.to_rational()
            .map(|q| (q.numer().clone(), q.denom().clone()))
    }

    pub fn sign(&self) -> Sign {
        match self {
            Scalar::Q(q) => q.numer().sign(),
            _ => {
                if self.is_zero() {
                    Sign::NoSign
                } else {
                    Sign::Plus
                }
            }
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$f(rhs).expect("scalar field mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs).expect("scalar field mismatch")
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$f(rhs).expect("scalar field mismatch")
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::QI(g) => Scalar::gaussian(-&g.re, -&g.im),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
