//! Exact rational scalars used for all point coordinates.
//!
//! Coordinates are arbitrary-precision rationals kept in canonical form
//! (positive denominator, fully reduced). The text form accepted and
//! produced everywhere is `INT` or `INT/POSINT`, e.g. `-7` or `355/113`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::str::FromStr;

/// Canonical exact rational. `num_rational` keeps the value reduced with a
/// positive denominator, which is exactly the invariant we need.
pub type Rational = BigRational;

/// Parse error for the `INT[/POSINT]` coordinate syntax.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `INT` or `INT/POSINT`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let bad = || ParseRationalError(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if !d.is_positive() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Formats a rational as `INT` or `INT/POSINT` (exact round-trip form).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rounds a rational to `f64` for report output only. Never used in predicates.
pub fn to_f64(r: &Rational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Good enough for display purposes; exact values keep their text form.
    let scale = 1i64 << 40;
    let q = (num * BigInt::from(scale)) / den;
    let q: f64 = match i128::try_from(q.clone()) {
        Ok(v) => v as f64,
        Err(_) => {
            let digits = q.to_string();
            digits.parse::<f64>().unwrap_or(f64::NAN)
        }
    };
    q / scale as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-7", "355/113", "-2/3", "1000000000000000000000/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn rejects_bad_literals() {
        for s in ["", "1/0", "1/-2", "a", "1.5", "2/ 3"] {
            assert!(parse_rational(s).is_err(), "{s} should fail");
        }
    }

    #[test]
    fn canonical_form() {
        let r = parse_rational("6/4").unwrap();
        assert_eq!(format_rational(&r), "3/2");
        assert!(parse_rational("0/5").unwrap().is_zero());
    }
}
