//! Exact rationals.
//!
//! Every number in the library is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. The wire format
//! is the string `"p/q"` (or `"p"` for integers).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from a machine integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`; panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact square root, when the rational is a square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// The rational `k`-th root of `r`, positive when `k` is even.
pub fn rational_root(r: &Rational, k: u32) -> Option<Rational> {
    if k == 0 || (k.is_multiple_of(2) && r.is_negative()) {
        return None;
    }
    let root = |n: &BigInt| {
        let c = n.nth_root(k);
        (c.pow(k) == *n).then_some(c)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

/// `r^e` for a possibly negative exponent; `r` must be nonzero when `e < 0`.
pub fn rpow(r: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Accepts JSON numbers (integers) or `"p/q"` strings.
pub fn deserialize_rational<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let v = serde_json::Value::deserialize(d)?;
    value_to_rational(&v).map_err(serde::de::Error::custom)
}

pub fn deserialize_rational_vec<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<Rational>, D::Error> {
    let v = Vec::<serde_json::Value>::deserialize(d)?;
    v.iter()
        .map(value_to_rational)
        .collect::<Result<_>>()
        .map_err(serde::de::Error::custom)
}

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn serialize_rational_vec<S: Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub fn value_to_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(q(i)),
            None => Err(Error::InvalidInput(format!(
                "non-integer JSON number {n}; write rationals as \"p/q\" strings"
            ))),
        },
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::InvalidInput(format!("expected a rational, found {other}"))),
    }
}

pub fn rational_to_value(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(format_rational(r))
}

pub fn rationals_to_value(v: &[Rational]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(rational_to_value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), frac(-3, 2));
        assert_eq!(format_rational(&frac(-3, 2)), "-3/2");
        assert_eq!(format_rational(&q(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&q(2)), None);
        assert_eq!(rational_sqrt(&q(-1)), None);
    }
}
