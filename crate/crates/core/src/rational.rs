//! Exact rational numbers and their textual forms.
//!
//! Accepted input: integers (`"-3"`), fractions (`"7/2"`) and finite
//! decimals (`"6.25"`, `".5"`); exponent notation is rejected. Output is always
//! `"p/q"` with `q > 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return input("empty number");
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(p, text)?;
        let q = parse_int(q, text)?;
        if q.is_zero() {
            return input(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return input(format!("not a number: {text:?}"));
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return input(format!("not a number: {text:?}"));
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = digits.parse().map_err(|_| bad(text))?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| bad(whole))
}

fn bad(text: &str) -> crate::Error {
    crate::Error::Input(format!("not a number: {text:?}"))
}

/// `"p/q"` form, reduced, positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shortest human form: integers print bare, everything else as `p/q`.
pub fn display_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}

/// Parses a comma separated list of numbers.
pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

pub(crate) fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub(crate) fn gcd_of_numerators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(&r.numer().abs()))
}
