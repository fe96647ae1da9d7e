//! Exact rational scalars and their text renderings.
//!
//! Every quantity that feeds a published table is kept as a [`Rat`] until the
//! moment it is printed; decimal output is round-half-even at a caller-chosen
//! number of places.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, the scalar type of the whole crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"p/q"`, or decimal notation like `"0.375"`, with optional
/// sign and surrounding whitespace.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    if !t.contains('/') && t.contains('.') {
        return parse_decimal(t);
    }
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in {t:?}"))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in {t:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {t:?}"));
    }
    Ok(Rat::new(p, q))
}

fn parse_decimal(t: &str) -> Result<Rat, String> {
    let (sign, digits) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = digits.split_once('.').expect("caller saw a dot");
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("bare dot in {t:?}"));
    }
    let digit = |part: &str| -> Result<BigInt, String> {
        if part.is_empty() {
            return Ok(BigInt::zero());
        }
        if !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {t:?}"));
        }
        part.parse().map_err(|_| format!("bad decimal {t:?}"))
    };
    let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
    let numer = digit(int_part)? * &scale + digit(frac_part)?;
    Ok(Rat::new(numer * BigInt::from(sign), scale))
}

/// Renders a rational as `"p"` when integral, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rounds `r * 10^places` to the nearest integer, ties to even.
fn scaled_half_even(r: &Rat, places: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = r * Rat::from_integer(scale);
    let (quot, rem) = scaled.numer().div_mod_floor(scaled.denom());
    // rem/denom in [0,1); compare against 1/2 exactly.
    let twice = &rem * BigInt::from(2);
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => quot,
        std::cmp::Ordering::Greater => quot + 1,
        std::cmp::Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1
            }
        }
    }
}

/// Fixed-point decimal rendering of a rational, round-half-even.
pub fn to_decimal(r: &Rat, places: u32) -> String {
    let scaled = scaled_half_even(r, places);
    let negative = scaled.sign() == Sign::Minus;
    let digits = scaled.magnitude().to_string();
    let places = places as usize;
    let (int_part, frac_part) = if digits.len() > places {
        let split = digits.len() - places;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        ("0".to_string(), format!("{digits:0>places$}"))
    };
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Nearest integer to `r`, halves rounded up (toward +infinity).
pub fn round_half_up(r: &Rat) -> BigInt {
    let (quot, rem) = r.numer().div_mod_floor(r.denom());
    let twice = &rem * BigInt::from(2);
    if twice >= *r.denom() {
        quot + 1
    } else {
        quot
    }
}

/// `f64` approximation, adequate for plots and Monte Carlo seeds only.
pub fn to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).expect("rational out of f64 range")
}

/// Sum of a slice of rationals.
pub fn rat_sum<'a>(items: impl IntoIterator<Item = &'a Rat>) -> Rat {
    items.into_iter().fold(Rat::zero(), |acc, x| acc + x)
}

/// True when the entries are non-negative and sum to exactly one.
pub fn is_normalized(entries: &[Rat]) -> bool {
    entries.iter().all(|w| !w.is_negative()) && rat_sum(entries).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["3", "-2", "1/3", "-7/4", "51"] {
            let r = parse_rat(text).unwrap();
            assert_eq!(format_rat(&r), text);
        }
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat(" 2 / 6 ").unwrap()), "1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a").is_err());
    }

    #[test]
    fn parse_accepts_decimal_notation() {
        assert_eq!(parse_rat("0.375").unwrap(), ratio(3, 8));
        assert_eq!(parse_rat("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rat(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("2.").unwrap(), rat(2));
        assert_eq!(parse_rat("0.300").unwrap(), ratio(3, 10));
        assert!(parse_rat(".").is_err());
        assert!(parse_rat("1.2.3").is_err());
        assert!(parse_rat("0.1e3").is_err());
    }

    #[test]
    fn decimal_rendering_rounds_half_even() {
        assert_eq!(to_decimal(&ratio(11, 18), 3), "0.611");
        assert_eq!(to_decimal(&ratio(7, 36), 3), "0.194");
        assert_eq!(to_decimal(&ratio(1, 2), 0), "0");
        assert_eq!(to_decimal(&ratio(3, 2), 0), "2");
        assert_eq!(to_decimal(&ratio(5, 1000), 2), "0.00");
        assert_eq!(to_decimal(&ratio(15, 1000), 2), "0.02");
        assert_eq!(to_decimal(&ratio(25, 1000), 2), "0.02");
        assert_eq!(to_decimal(&ratio(-25, 1000), 2), "-0.02");
        assert_eq!(to_decimal(&rat(0), 3), "0.000");
        assert_eq!(to_decimal(&ratio(2, 3), 3), "0.667");
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(round_half_up(&ratio(5, 2)), BigInt::from(3));
        assert_eq!(round_half_up(&ratio(-5, 2)), BigInt::from(-2));
        assert_eq!(round_half_up(&ratio(7, 3)), BigInt::from(2));
    }
}
