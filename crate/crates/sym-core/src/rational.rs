//! Exact rationals and the small ring abstraction shared by every coefficient type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Falling factorial `k (k-1) ... (k-r+1)` for a possibly negative `k`.
pub fn falling(k: i64, r: usize) -> Rational {
    let mut acc = BigInt::one();
    for j in 0..r as i64 {
        acc *= BigInt::from(k - j);
    }
    Rational::from_integer(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Serde adapter storing a rational as its string form.
pub mod as_string {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}

/// Commutative ring operations used by convolutions and series.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn from_rational(q: Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn add_assign(&mut self, other: &Self) {
        *self = Ring::add(self, other);
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&int(-3)), "-3");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(falling(5, 2), int(20));
        assert_eq!(falling(-2, 3), int(-24));
        assert_eq!(falling(3, 4), int(0));
    }
}
