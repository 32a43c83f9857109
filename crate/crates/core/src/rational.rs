//! Exact rational scalars and their textual forms.
//!
//! Coordinates are written either as `p/q` or as decimal strings with an
//! optional exponent (`0.25`, `-3e-2`). Decimal input is read exactly, so
//! `"0.1"` becomes `1/10`.

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `p/q`, an integer, or a decimal string into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(Error::Parse(format!("exponent out of range in {s:?}")));
    }
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(num * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(num, Pow::pow(&ten, (-scale) as u32))
    };
    Ok(value)
}

/// Canonical text form: `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering rounded to `sig` significant digits. Display only.
pub fn to_decimal(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    // Find k with 10^(k-1) <= a < 10^k.
    let ten = Rational::from_integer(BigInt::from(10));
    let mut k: i64 = 0;
    let mut probe = a.clone();
    while probe >= Rational::one() {
        probe /= &ten;
        k += 1;
    }
    while probe < Rational::new(BigInt::one(), BigInt::from(10)) {
        probe *= &ten;
        k -= 1;
    }
    // Scale so that the integer part carries `sig` digits.
    let shift = sig as i64 - k;
    let scaled = if shift >= 0 {
        a * Rational::from_integer(Pow::pow(&BigInt::from(10), shift as u32))
    } else {
        a / Rational::from_integer(Pow::pow(&BigInt::from(10), (-shift) as u32))
    };
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let mut digits = if &twice >= scaled.denom() { q + 1u32 } else { q };
    let mut shift = shift;
    // Rounding may carry into a new leading digit.
    if digits.to_string().len() > sig {
        digits /= 10u32;
        shift -= 1;
    }
    let text = digits.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if shift <= 0 {
        out.push_str(&text);
        out.extend(std::iter::repeat_n('0', (-shift) as usize));
    } else if (shift as usize) >= text.len() {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', shift as usize - text.len()));
        out.push_str(&text);
    } else {
        let split = text.len() - shift as usize;
        out.push_str(&text[..split]);
        out.push('.');
        out.push_str(&text[split..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        BigSign::Minus => -1,
        BigSign::NoSign => 0,
        BigSign::Plus => 1,
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing a rational as its canonical string.
pub mod as_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/-4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2.5e2").unwrap(), int(250));
        assert_eq!(parse_rational("25e-3").unwrap(), rat(1, 40));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "--1", ".", "1e", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(1, 3)), "1/3");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-2, 6)), "-1/3");
    }

    #[test]
    fn decimal_display() {
        assert_eq!(to_decimal(&rat(1, 3), 9), "0.333333333");
        assert_eq!(to_decimal(&rat(2, 3), 9), "0.666666667");
        assert_eq!(to_decimal(&int(123), 9), "123");
        assert_eq!(to_decimal(&rat(-5, 2), 9), "-2.5");
        assert_eq!(to_decimal(&rat(9_999_999_999, 10), 9), "1000000000");
        assert_eq!(to_decimal(&rat(1, 400), 3), "0.0025");
        assert_eq!(to_decimal(&int(0), 9), "0");
    }
}
