//! Exact rational weights.
//!
//! Every quantity in this crate is an arbitrary-precision rational. Weights
//! are read from decimal (`1.25`) or fraction (`5/4`) literals and never pass
//! through floating point except for display.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Signed exact rational, used for defects and slacks.
pub type Rational = BigRational;

/// A nonnegative exact edge weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Rational);

impl Weight {
    /// Wraps a rational, returning it back if it is negative.
    pub fn new(value: Rational) -> Result<Self, Rational> {
        if value.is_negative() {
            Err(value)
        } else {
            Ok(Weight(value))
        }
    }

    pub fn zero() -> Self {
        Weight(Rational::zero())
    }

    pub fn from_integer(n: u64) -> Self {
        Weight(Rational::from_integer(BigInt::from(n)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &'a Weight) -> Weight {
        Weight(&self.0 + &rhs.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Weight {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = parse_rational(s)?;
        Weight::new(value).map_err(|v| format!("weight {v} is negative"))
    }
}

/// Parses a decimal (`-1.25`, `3`, `.5`) or fraction (`5/4`) literal exactly.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = parse_integer(num.trim()).ok_or_else(|| bad(text))?;
        let den: BigInt = parse_integer(den.trim()).ok_or_else(|| bad(text))?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad(text));
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad(text));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| bad(text))?;
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Ok(Rational::new(numer, denom))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn bad(text: &str) -> String {
    format!("`{text}` is not a decimal or p/q rational")
}

/// Decimal rendering with six significant digits. Display only.
pub fn approx(value: &Rational) -> String {
    let x = value.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("1.25").unwrap(), r(5, 4));
        assert_eq!(parse_rational("5/4").unwrap(), r(5, 4));
        assert_eq!(parse_rational("10/8").unwrap(), r(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), r(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert_eq!(parse_rational("1/3").unwrap(), r(1, 3));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "1e5", "--1", "/3", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn weight_rejects_negative() {
        assert!("-1".parse::<Weight>().is_err());
        assert!("0".parse::<Weight>().unwrap().is_zero());
    }

    #[test]
    fn approx_has_six_significant_digits() {
        assert_eq!(approx(&r(4, 1)), "4.00000");
        assert_eq!(approx(&r(1, 3)), "0.333333");
        assert_eq!(approx(&r(-15, 4)), "-3.75000");
        assert_eq!(approx(&r(0, 1)), "0");
        assert_eq!(approx(&r(123456, 1)), "123456");
    }

    #[test]
    fn display_round_trips() {
        for v in [r(5, 4), r(-7, 3), r(0, 1), r(12, 1)] {
            assert_eq!(parse_rational(&v.to_string()).unwrap(), v);
        }
    }
}
