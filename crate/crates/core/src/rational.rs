//! Exact rational helpers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("`{input}` is not {expected}")]
pub struct RationalParseError {
    pub input: String,
    pub expected: &'static str,
}

/// Parses `p/q` or an integer. Decimals are refused.
pub fn parse_exact(text: &str) -> Result<BigRational, RationalParseError> {
    let err = || RationalParseError {
        input: text.to_string(),
        expected: "an exact rational `p/q`",
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Like [`parse_exact`] but also accepts finite decimals such as `0.2`.
pub fn parse_lenient(text: &str) -> Result<BigRational, RationalParseError> {
    if let Ok(r) = parse_exact(text) {
        return Ok(r);
    }
    let err = || RationalParseError {
        input: text.to_string(),
        expected: "a rational or decimal number",
    };
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').ok_or_else(err)?;
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    let value = BigRational::new(num, den);
    Ok(if negative { -value } else { value })
}

pub fn ceil_to_biguint(r: &BigRational) -> BigUint {
    assert!(!r.is_negative(), "ceil of a negative rational");
    r.ceil().to_integer().to_biguint().unwrap()
}

pub fn from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

pub fn from_ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_forms() {
        assert_eq!(parse_exact("1/4").unwrap(), from_ratio(1, 4));
        assert_eq!(parse_exact("2/8").unwrap(), from_ratio(1, 4));
        assert_eq!(parse_exact("1").unwrap(), from_ratio(1, 1));
        assert!(parse_exact("0.25").is_err());
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("x").is_err());
    }

    #[test]
    fn decimals_when_lenient() {
        assert_eq!(parse_lenient("0.2").unwrap(), from_ratio(1, 5));
        assert_eq!(parse_lenient(".5").unwrap(), from_ratio(1, 2));
        assert_eq!(parse_lenient("7").unwrap(), from_ratio(7, 1));
        assert!(parse_lenient("1.2.3").is_err());
        assert!(parse_lenient(".").is_err());
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_to_biguint(&from_ratio(7, 2)), BigUint::from(4u32));
        assert_eq!(ceil_to_biguint(&from_ratio(4, 1)), BigUint::from(4u32));
    }
}
