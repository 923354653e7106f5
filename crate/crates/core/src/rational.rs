//! Exact rational numbers and their `p/q` text form.

use alloc::string::ToString;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Error;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Parses `p/q` or an integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let trimmed = text.trim();
    Rational::from_str(trimmed).map_err(|_| Error::InvalidRational(trimmed.to_string()))
}

/// `num/den` as an exact rational. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn is_positive(value: &Rational) -> bool {
    *value > Rational::zero()
}

pub fn is_negative(value: &Rational) -> bool {
    *value < Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" -6 ").unwrap(), integer(-6));
        assert_eq!(parse_rational("-1/32").unwrap(), ratio(-1, 32));
    }

    #[test]
    fn rejects_garbage_and_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn renders_in_lowest_terms() {
        assert_eq!(format!("{}", ratio(6, 8)), "3/4");
        assert_eq!(format!("{}", ratio(4, 2)), "2");
    }
}
