//! Exact integer and rational arithmetic plus the small amount of
//! elementary number theory the rest of the crate needs.
//!
//! [`Rational`] is a thin newtype over [`BigRational`]; every constructor
//! and operator returns a reduced fraction with positive denominator, so
//! structural equality is numeric equality. Its text form is `p/q`, or
//! just `p` when the value is an integer.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, reducing and moving the sign to the numerator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::domain("rational", "zero denominator"));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// Infallible variant for small constant fractions. Panics on `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Rational(&self.0 * BigRational::from_integer(k.into()))
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by a zero rational panics, as for BigRational.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q`, `-p/q` and `−p/q` (U+2212). The denominator
    /// must be a nonzero unsigned integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
        let t = s.trim();
        let (negative, body) = if let Some(rest) = t.strip_prefix('-') {
            (true, rest)
        } else if let Some(rest) = t.strip_prefix('\u{2212}') {
            (true, rest)
        } else {
            (false, t)
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (
                parse_int(n.trim()).ok_or_else(bad)?,
                parse_int(d.trim()).ok_or_else(bad)?,
            ),
            None => (parse_int(body).ok_or_else(bad)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Malformed(format!("zero denominator in {s:?}")));
        }
        let num = if negative { -num } else { num };
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        v.parse().map_err(|e: Error| E::custom(e))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
        Err(E::custom(format!(
            "floating-point literal {v} is not accepted; write the rational as a string"
        )))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Least common multiple of every integer in `[lo, hi]`.
///
/// Running lcm with gcd reduction. The factorization route lives in the
/// oracle module.
pub fn lcm_range(lo: u64, hi: u64) -> Result<BigInt> {
    if lo < 1 {
        return Err(Error::domain(
            "lcm_range",
            format!("lower end {lo} is below 1"),
        ));
    }
    if lo > hi {
        return Err(Error::domain(
            "lcm_range",
            format!("empty range [{lo}, {hi}]"),
        ));
    }
    Ok((lo..=hi).fold(BigInt::one(), |acc, n| acc.lcm(&BigInt::from(n))))
}

/// Inverse of `a` modulo `r`, in `[1, r-1]` (or `0` when `r == 1`).
pub fn mod_inverse(a: i64, r: u64) -> Result<u64> {
    if r < 2 {
        return Err(Error::domain(
            "mod_inverse",
            format!("modulus {r} is below 2"),
        ));
    }
    let m = i128::from(r);
    let egcd = i128::from(a).rem_euclid(m).extended_gcd(&m);
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible { a, r });
    }
    Ok(egcd.x.rem_euclid(m) as u64)
}

/// Smallest nonnegative residue of `j` modulo `r`.
pub fn residue(j: i64, r: u64) -> Result<u64> {
    if r < 1 {
        return Err(Error::domain("residue", "modulus must be positive"));
    }
    Ok(i128::from(j).rem_euclid(i128::from(r)) as u64)
}

/// Number of decimal digits of `|x|`; zero has one digit.
pub fn digit_count(x: &BigInt) -> u64 {
    if x.is_zero() {
        return 1;
    }
    x.magnitude().to_str_radix(10).len() as u64
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Serde helpers that write big integers as decimal strings.
pub mod as_decimal {
    use std::fmt::Display;

    use serde::Serializer;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub mod option {
        use std::fmt::Display;

        use serde::Serializer;

        pub fn serialize<T: Display, S: Serializer>(
            v: &Option<T>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }
    }
}
