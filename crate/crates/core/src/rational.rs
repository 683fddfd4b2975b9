//! Exact rational parsing and small combinatorial helpers.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a rational number (expected `num/den`, an integer or a decimal)")]
pub struct RationalParseError(pub String);

/// Parses `num/den`, an integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let s = text.trim();
    let err = || RationalParseError(text.to_owned());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = int.trim_start_matches(['-', '+']);
        if (digits.is_empty() && frac.is_empty()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let mantissa: BigInt = format!("{digits}{frac}").trim_start_matches('0').parse().unwrap_or_default();
        let scale = num::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `n choose k` as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Decimal approximation for display only.
pub fn to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn is_probability(p: &BigRational) -> bool {
    !p.is_negative() && *p <= BigRational::one()
}

pub fn ceil_to_i64(q: &BigRational) -> Option<i64> {
    use num::ToPrimitive;
    q.ceil().to_integer().to_i64()
}

pub fn floor_to_i64(q: &BigRational) -> Option<i64> {
    use num::ToPrimitive;
    q.floor().to_integer().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational(" 6/8 ").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("2.").unwrap(), int(2));
        assert_eq!(parse_rational("0.0").unwrap(), int(0));
        for bad in ["", "1/0", "a", "1/2/3", "1.2.3", "-.x", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(12, 6), BigInt::from(924));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        // Pascal's rule
        for n in 1..30u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_to_i64(&ratio(3, 2)), Some(2));
        assert_eq!(floor_to_i64(&ratio(29, 10)), Some(2));
        assert_eq!(ceil_to_i64(&ratio(-1, 2)), Some(0));
        assert_eq!(floor_to_i64(&int(4)), Some(4));
    }
}
