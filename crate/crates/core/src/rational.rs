//! Exact rational numbers used for costs, budgets, payments, and satisfaction.
//!
//! Values print as `p/q` (or `p` when the denominator is one) and parse from
//! that form as well as from plain decimals such as `2.5`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An arbitrary-precision rational, always gcd-reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Cost, budget, and payment amounts.
pub type Money = Rational;

/// Satisfaction values produced by a satisfaction function.
pub type SatValue = Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRationalError(pub String);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
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

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Rationalizes a finite float by rounding it to `digits` significant
    /// decimal digits. The result is a deterministic function of `value`.
    pub fn from_f64_significant(value: f64, digits: usize) -> Self {
        assert!(value.is_finite(), "cannot rationalize {value}");
        assert!(digits >= 1);
        let text = format!("{:.*e}", digits - 1, value);
        text.parse().expect("scientific notation from format! parses")
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
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

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.trim_start_matches('+').parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((a, b)) => (a, b),
        None => (unsigned, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(Rational(value))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s = raw.trim();
        let err = || ParseRationalError(raw.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let numer = parse_int(n.trim()).ok_or_else(err)?;
            let denom = parse_int(d.trim()).ok_or_else(err)?;
            if denom.is_zero() {
                return Err(err());
            }
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        if let Some(v) = parse_int(s) {
            return Ok(Rational(BigRational::from_integer(v)));
        }
        parse_decimal(s).ok_or_else(err)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl de::Visitor<'_> for Visitor {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\", a decimal string, or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(BigInt::from(v))))
            }
        }
        deserializer.deserialize_any(Visitor)
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
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
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

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Mul<usize> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: usize) -> Rational {
        self * Rational::from(rhs)
    }
}

impl Div<usize> for &Rational {
    type Output = Rational;
    fn div(self, rhs: usize) -> Rational {
        self / Rational::from(rhs)
    }
}

/// `ceil(numer / denom)` for a positive integer denominator, as a `usize`.
/// Saturates at `usize::MAX` for absurdly large values.
pub fn ceil_to_usize(value: &Rational) -> usize {
    let c = value.ceil();
    if c.is_negative() {
        return 0;
    }
    c.to_usize().unwrap_or(usize::MAX)
}

/// Compares `a/b` against `c/d` for positive denominators without dividing.
pub fn cmp_fractions(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Ordering {
    (a * d).cmp(&(c * b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_decimal_and_integer() {
        assert_eq!("5/2".parse::<Rational>().unwrap(), Rational::new(5, 2));
        assert_eq!("2.5".parse::<Rational>().unwrap(), Rational::new(5, 2));
        assert_eq!("10".parse::<Rational>().unwrap(), Rational::from_integer(10));
        assert_eq!("-0.125".parse::<Rational>().unwrap(), Rational::new(-1, 8));
        assert_eq!("1e3".parse::<Rational>().unwrap(), Rational::from_integer(1000));
        assert_eq!(".5".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("6/4".parse::<Rational>().unwrap().to_string(), "3/2");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1/", "/2", "1.2.3", "--1", "1/2/3", "."] {
            assert!(bad.parse::<Rational>().is_err(), "{bad} parsed");
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(Rational::new(10, 4).to_string(), "5/2");
        assert_eq!(Rational::new(-6, -3).to_string(), "2");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn significant_digit_rounding() {
        let r = Rational::from_f64_significant(2f64.sqrt(), 12);
        assert_eq!(r.to_string(), "141421356237/100000000000");
        assert_eq!(Rational::from_f64_significant(1.0, 12), Rational::one());
    }

    #[test]
    fn serde_round_trip() {
        let v = Rational::new(7, 3);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"7/3\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        let from_num: Rational = serde_json::from_str("4").unwrap();
        assert_eq!(from_num, Rational::from_integer(4));
    }
}
