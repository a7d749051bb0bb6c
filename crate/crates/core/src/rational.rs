//! Exact rational helpers shared by the formula oracles and the harness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Parses `"3"`, `"-2/5"` or a decimal such as `"0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty()
        || !whole.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let value = BigRational::new(num, den);
    Ok(if neg { -value } else { value })
}

/// `ceil(r * n)` for a non-negative rational `r`.
pub fn ceil_mul(r: &BigRational, n: usize) -> usize {
    let x = r * int(n as u64);
    x.ceil()
        .to_integer()
        .to_usize()
        .expect("ceil(r * n) must be a non-negative machine integer")
}

/// Decimal approximation for display.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `"p/q (decimal)"`, or `"p (p)"` for integers.
pub fn display_with_decimal(r: &BigRational) -> String {
    format!("{} ({})", r, to_f64(r))
}

/// `x (x-1) ... (x-t+1) / t!` for rational `x`.
pub fn generalized_binomial(x: &BigRational, t: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..t {
        acc *= (x - int(i)) / int(i + 1);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

pub fn clamp_nonnegative(x: BigRational) -> BigRational {
    if x.is_negative() {
        BigRational::zero()
    } else {
        x
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod as_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/5").unwrap(), ratio(-2, 5));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("0.8").unwrap(), ratio(4, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn ceil_mul_is_exact() {
        assert_eq!(ceil_mul(&ratio(4, 5), 10), 8);
        assert_eq!(ceil_mul(&ratio(3, 4), 9), 7);
        assert_eq!(ceil_mul(&int(1), 9), 9);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(generalized_binomial(&int(3), 2), int(3));
        assert_eq!(generalized_binomial(&ratio(5, 2), 2), ratio(15, 8));
    }

    #[test]
    fn display() {
        assert_eq!(display_with_decimal(&ratio(2, 5)), "2/5 (0.4)");
    }
}
