//! Exact rational parsing, formatting, and small combinatorial helpers.
//!
//! Rationals cross the textual interfaces (profile files, spectrum JSON,
//! CLI flags) as strings, either `"p/q"` or decimal like `"1.25"` or
//! `"2.5e-3"`, and both forms parse exactly — no value ever passes through
//! a float.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Integer, Rational};

/// Parse an exact rational from `"p/q"`, integer, or decimal notation.
///
/// Accepted forms: `"3"`, `"-7/2"`, `"1.25"`, `"2.5e-3"`, `"1e6"`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let err = |reason: &str| Error::ParseRational {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let p: BigInt = num
            .trim()
            .parse()
            .map_err(|_| err("invalid numerator"))?;
        let q: BigInt = den
            .trim()
            .parse()
            .map_err(|_| err("invalid denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    // Decimal form: sign, digits, optional fraction, optional exponent.
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| err("invalid exponent"))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits: String = [int_part, frac_part].concat();
    let body = digits.strip_prefix(['+', '-']).unwrap_or(&digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("invalid digits"));
    }
    let numer: BigInt = digits.parse().map_err(|_| err("invalid digits"))?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        Rational::from(numer * ten.pow(shift as u32))
    } else {
        Rational::new(numer, ten.pow((-shift) as u32))
    })
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Binomial coefficient with the zero conventions used by the closed-form
/// coefficients: C(a, b) = 0 whenever b < 0 or b > a.
pub fn binomial(a: i64, b: i64) -> Integer {
    if b < 0 || b > a {
        return Integer::zero();
    }
    num_integer::binomial(BigInt::from(a), BigInt::from(b))
}

/// Rational-to-f64 conversion that survives numerators and denominators far
/// beyond the f64 range: each part is shifted into range separately and the
/// shifts recombined as an exact power of two, so only genuinely
/// unrepresentable values come out infinite or zero.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let shift_n = (r.numer().bits() as i64 - 512).max(0);
    let shift_d = (r.denom().bits() as i64 - 512).max(0);
    let n = (r.numer().abs() >> shift_n).to_f64().unwrap_or(f64::INFINITY);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::INFINITY);
    let sign = if r.numer().is_negative() { -1.0 } else { 1.0 };
    let exp = (shift_n - shift_d).clamp(-2100, 2100) as i32;
    sign * (n / d) * 2f64.powi(exp)
}

/// Round to `digits` fractional decimal digits (ties away from zero) and
/// format with the trailing zeros trimmed. The formatting rule is fixed so
/// that identical inputs always produce identical bytes.
pub fn format_decimal(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (r * Rational::from(scale.clone())).round();
    let scaled = scaled.numer().clone();
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let (int_part, frac_part) = num_integer::Integer::div_rem(&abs, &scale);
    let mut out = String::new();
    if negative && (!int_part.is_zero() || !frac_part.is_zero()) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if !frac_part.is_zero() {
        let frac = format!("{:0width$}", frac_part, width = digits as usize);
        let frac = frac.trim_end_matches('0');
        out.push('.');
        out.push_str(frac);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn parses_fraction_and_integer_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7/2").unwrap(), rat(-7, 2));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational("-12").unwrap(), rat(-12, 1));
    }

    #[test]
    fn parses_decimal_forms_exactly() {
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("2.5e-3").unwrap(), rat(1, 400));
        assert_eq!(parse_rational("1e6").unwrap(), rat(1_000_000, 1));
        assert_eq!(parse_rational("0.693147").unwrap(), rat(693_147, 1_000_000));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "x", "1/0", "1.2.3", "1e", "--3", "3/", "1,5"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(3, 2)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(0, 0), Integer::from(1));
        assert_eq!(binomial(5, 2), Integer::from(10));
        assert_eq!(binomial(5, 6), Integer::from(0));
        assert_eq!(binomial(5, -1), Integer::from(0));
        assert_eq!(binomial(-1, 0), Integer::from(0));
    }

    #[test]
    fn decimal_formatting_is_fixed() {
        assert_eq!(format_decimal(&rat(5, 4), 30), "1.25");
        assert_eq!(format_decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(format_decimal(&rat(0, 1), 10), "0");
        assert_eq!(format_decimal(&rat(2, 1), 5), "2");
    }

    #[test]
    fn big_ratio_converts_to_f64() {
        // Huge numerator and denominator, representable value near 1.
        let p3 = BigInt::from(3).pow(1000);
        let near_one = Rational::new(&p3 + 1, p3.clone());
        assert!((rational_to_f64(&near_one) - 1.0).abs() < 1e-12);
        // Representable value with a lopsided bit split: 7·2^1000 / 3.
        let big = Rational::new(BigInt::from(7) << 1000, BigInt::from(3));
        let expected = 7.0 / 3.0 * 2f64.powi(1000);
        assert!((rational_to_f64(&big) - expected).abs() < 1e-12 * expected);
        assert_eq!(rational_to_f64(&-big), -expected);
        // Genuine overflow really is infinite.
        let over = Rational::from_integer(BigInt::from(2).pow(1100));
        assert_eq!(rational_to_f64(&over), f64::INFINITY);
    }
}
