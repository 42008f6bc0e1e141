//! Exact rational helpers shared by every module.
//!
//! Truth tables and Fourier coefficients live in `f64`, which is exact for
//! the dyadic values that Boolean functions produce. Anything that has to be
//! compared exactly (distances, variances, bound sides) is lifted into
//! [`BigRational`] through [`ratio_from_f64`] or accumulated with
//! [`exact_sum`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty numeric literal")]
    Empty,
    #[error("invalid numeric literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, a plain integer, or a decimal literal such as `-1.25` into
/// an exact rational. Decimal literals are read exactly (`0.1` is `1/10`).
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let invalid = || RationalParseError::Invalid(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| invalid())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| invalid())?;
        if den.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp = i32::from_str(&s[pos + 1..]).map_err(|_| invalid())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).map_err(|_| invalid())?;
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
    Ok(value)
}

/// Exact conversion of a finite `f64` into a rational.
pub fn ratio_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Nearest `f64` to a rational.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Sums finite `f64` terms without rounding.
///
/// Every finite double is `mantissa * 2^exp`; the terms are aligned on the
/// smallest exponent and added as big integers.
pub fn exact_sum<I>(terms: I) -> BigRational
where
    I: IntoIterator<Item = f64>,
{
    let decoded: Vec<(BigInt, i32)> = terms
        .into_iter()
        .filter(|t| *t != 0.0)
        .map(|t| {
            assert!(t.is_finite(), "non-finite term in exact_sum");
            let (mantissa, exp, sign) = num_traits::float::FloatCore::integer_decode(t);
            let m = BigInt::from(mantissa) * BigInt::from(sign);
            (m, exp as i32)
        })
        .collect();
    let Some(min_exp) = decoded.iter().map(|(_, e)| *e).min() else {
        return BigRational::zero();
    };
    let mut acc = BigInt::zero();
    for (m, e) in decoded {
        acc += m << ((e - min_exp) as usize);
    }
    scale_pow2(BigRational::from_integer(acc), min_exp)
}

/// Rational mean of `f64` values over a table of length `2^m`.
pub fn exact_mean<I>(terms: I, len: usize) -> BigRational
where
    I: IntoIterator<Item = f64>,
{
    exact_sum(terms) / BigRational::from_integer(BigInt::from(len))
}

fn scale_pow2(r: BigRational, exp: i32) -> BigRational {
    if exp >= 0 {
        r * BigRational::from_integer(BigInt::one() << exp as usize)
    } else {
        r / BigRational::from_integer(BigInt::one() << (-exp) as usize)
    }
}

/// True when the rational has a power-of-two denominator and fits an `f64`
/// without rounding.
pub fn is_exact_f64(r: &BigRational) -> bool {
    let v = ratio_to_f64(r);
    v.is_finite() && ratio_from_f64(v) == *r
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Display wrapper: exact `p/q` by default, or 15 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Rendered<'a> {
    value: &'a BigRational,
    decimal: bool,
}

pub fn render(value: &BigRational, decimal: bool) -> Rendered<'_> {
    Rendered { value, decimal }
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.decimal {
            write!(f, "{}", format_decimal(ratio_to_f64(self.value)))
        } else if self.value.is_integer() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

/// Formats a float rounded to 15 significant digits, in the shortest form
/// that reproduces the rounded value.
pub fn format_decimal(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.14e}", x).parse().unwrap_or(x);
    format!("{}", rounded)
}
