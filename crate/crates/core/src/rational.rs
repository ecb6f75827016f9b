//! Exact rational scalars.
//!
//! Every value in the crate is a [`Rational`] (arbitrary precision). Text
//! forms accepted by [`parse_rational`] are integers (`-3`), fractions
//! (`2/3`) and finite decimals (`0.125`, read as exactly `125/1000`).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// Why a string could not be read as a rational.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty value")]
    Empty,
    #[error("non-finite value `{0}`")]
    NonFinite(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed number `{0}`")]
    Malformed(String),
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let lower = t.to_ascii_lowercase();
    let unsigned = lower.trim_start_matches(['+', '-']);
    if matches!(unsigned, "inf" | "infinity" | "nan") {
        return Err(ParseRationalError::NonFinite(t.to_string()));
    }
    let malformed = || ParseRationalError::Malformed(t.to_string());

    if let Some((num, den)) = t.split_once('/') {
        let n = parse_integer(num).ok_or_else(malformed)?;
        let d = parse_integer(den).ok_or_else(malformed)?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(t.to_string()));
        }
        return Ok(Rational::new(n, d));
    }

    let (negative, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| malformed())?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let t = text.trim();
    let body = t.strip_prefix(['+', '-']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// Canonical text form: `p` for integers, `p/q` in lowest terms otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Smallest integer `>= value`, as a machine integer.
pub fn ceil_u64(value: &Rational) -> Option<u64> {
    let c = value.ceil().to_integer();
    u64::try_from(c).ok()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero)
}

pub fn is_one(value: &Rational) -> bool {
    value.is_one()
}
