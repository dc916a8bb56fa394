//! Exact field elements: arbitrary-precision rationals or a prime field GF(p).
//!
//! Every container in this crate records the [`Field`] its entries live in;
//! mixing fields in one expression is a programming error and panics, while
//! the public construction boundaries check tags and return
//! [`Error::FieldMismatch`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest prime modulus accepted for GF(p) mode.
pub const MAX_GF_PRIME: u32 = 1 << 16;

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Tag identifying the ground field of a container.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers with arbitrary-precision arithmetic.
    Rational,
    /// The prime field GF(p).
    Gf(u32),
}

impl Field {
    /// Builds a GF(p) tag, validating that `p` is prime and `p < 2^16`.
    pub fn gf(p: u32) -> Result<Field> {
        if p >= MAX_GF_PRIME {
            return Err(Error::InvalidArgument(format!(
                "GF modulus {p} exceeds the supported bound 2^16"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Field::Gf(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Gf(p) => Scalar::Gf { p: *p, value: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Gf(p) => Scalar::Gf { p: *p, value: 1 % p },
        }
    }

    /// Embeds a signed integer.
    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Gf(p) => {
                let m = i64::from(*p);
                Scalar::Gf {
                    p: *p,
                    value: v.rem_euclid(m) as u32,
                }
            }
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Gf(p) => Some(u64::from(*p)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Gf(p) => write!(f, "gf {p}"),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gf { p: u32, value: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Gf { p, .. } => Field::Gf(*p),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn gf(p: u32, value: i64) -> Scalar {
        Scalar::Gf {
            p,
            value: value.rem_euclid(i64::from(p)) as u32,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gf { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Gf { p, value } => *value == 1 % p,
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Gf { p, value } => {
                // Fermat: value^(p-2) mod p.
                let mut acc = 1u64;
                let mut base = u64::from(*value);
                let mut e = u64::from(*p) - 2;
                let m = u64::from(*p);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::Gf {
                    p: *p,
                    value: acc as u32,
                }
            }
        })
    }

    /// Magnitude of the numerator, used by the elimination pivot heuristic.
    pub(crate) fn numer_magnitude(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.numer().abs(),
            Scalar::Gf { value, .. } => BigInt::from(*value),
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "mixed fields in one expression: {} vs {}",
            self.field(),
            other.field()
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Gf { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gf { p, value: a }, Scalar::Gf { value: b, .. }) => Scalar::Gf {
                p: *p,
                value: ((u64::from(*a) + u64::from(*b)) % u64::from(*p)) as u32,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Gf { p, value: a }, Scalar::Gf { value: b, .. }) => Scalar::Gf {
                p: *p,
                value: ((u64::from(*a) + u64::from(*p) - u64::from(*b)) % u64::from(*p)) as u32,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gf { p, value: a }, Scalar::Gf { value: b, .. }) => Scalar::Gf {
                p: *p,
                value: (u64::from(*a) * u64::from(*b) % u64::from(*p)) as u32,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gf { p, value } => Scalar::Gf {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }
}
