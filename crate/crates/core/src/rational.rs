//! Exact rational numbers.
//!
//! Everything that can be fractional (exponents, constraint values, window
//! bounds, box edges) is carried as a reduced `i128` fraction. Weight sums whose
//! denominators outgrow `i128` use [`BigRational`] instead.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

pub type Rational = num_rational::Ratio<i128>;

pub fn int(v: impl Into<i128>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(num: impl Into<i128>, den: impl Into<i128>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `|x|⁺`
pub fn pos_part(x: Rational) -> Rational {
    if x.is_positive() {
        x
    } else {
        Rational::zero()
    }
}

/// `|x|⁻`
pub fn neg_part(x: Rational) -> Rational {
    if x.is_negative() {
        -x
    } else {
        Rational::zero()
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25`, exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Usage(format!("malformed rational `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Usage(format!("zero denominator in `{text}`")));
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) || frac.len() > 30 {
        return Err(bad());
    }
    let mut num: i128 = if whole.is_empty() {
        0
    } else {
        whole.parse().map_err(|_| bad())?
    };
    let mut den: i128 = 1;
    for b in frac.bytes() {
        num = num
            .checked_mul(10)
            .and_then(|v| v.checked_add(i128::from(b - b'0')))
            .ok_or_else(bad)?;
        den = den.checked_mul(10).ok_or_else(bad)?;
    }
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact `1/c³` as a big fraction.
pub fn inverse_cube(c: u64) -> BigRational {
    let c = BigInt::from(c);
    BigRational::new(BigInt::one(), &c * &c * &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("1.5").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn parts() {
        assert_eq!(pos_part(ratio(-3, 2)), int(0));
        assert_eq!(neg_part(ratio(-3, 2)), ratio(3, 2));
        assert_eq!(pos_part(int(2)), int(2));
        assert_eq!(neg_part(int(2)), int(0));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&ratio(99, 100)), "99/100");
        assert_eq!(format_rational(&int(-7)), "-7");
    }
}
