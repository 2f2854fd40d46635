//! Six-significant-digit decimal rendering of exact rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

const SIGNIFICANT: i64 = 6;

fn pow10(e: u64) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `10^e` as a rational, for any sign of `e`.
fn ten_to(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u64))
    } else {
        BigRational::new(BigInt::one(), pow10(e.unsigned_abs()))
    }
}

/// Rounds to six significant digits, half to even. Plain notation for
/// exponents in `-4..6`, otherwise `d.ddddde<exp>`; trailing zeros dropped.
pub fn render_decimal(value: &BigRational) -> String {
    if value.is_zero() {
        return "0".into();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let q = value.abs();

    let digits = |v: &BigInt| v.to_string().len() as i64;
    let mut exp = digits(q.numer()) - digits(q.denom());
    while ten_to(exp) > q {
        exp -= 1;
    }
    while ten_to(exp + 1) <= q {
        exp += 1;
    }

    let scaled = q * ten_to(SIGNIFICANT - 1 - exp);
    let (whole, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = rem * 2;
    let mut mantissa = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => whole,
        std::cmp::Ordering::Greater => whole + 1,
        std::cmp::Ordering::Equal if whole.is_even() => whole,
        std::cmp::Ordering::Equal => whole + 1,
    };
    if mantissa == pow10(SIGNIFICANT as u64) {
        mantissa = pow10(SIGNIFICANT as u64 - 1);
        exp += 1;
    }
    let m = mantissa.to_string();
    debug_assert_eq!(m.len() as i64, SIGNIFICANT);

    let body = if (-4..SIGNIFICANT).contains(&exp) {
        if exp >= 0 {
            let split = (exp + 1) as usize;
            format!("{}.{}", &m[..split], &m[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), m)
        }
    } else {
        format!("{}.{}e{}", &m[..1], &m[1..], exp)
    };
    format!("{sign}{}", strip_zeros(&body))
}

pub fn render_integer_decimal(value: &BigUint) -> String {
    render_decimal(&BigRational::from_integer(BigInt::from(value.clone())))
}

fn strip_zeros(s: &str) -> String {
    let (mantissa, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let trimmed = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{trimmed}{exp}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn table_values() {
        assert_eq!(render_decimal(&r(64, 27)), "2.37037");
        assert_eq!(render_decimal(&r(6561, 256)), "25.6289");
        assert_eq!(render_decimal(&r(21318, 1)), "21318");
        assert_eq!(render_decimal(&r(1, 1)), "1");
        assert_eq!(render_decimal(&r(0, 1)), "0");
    }

    #[test]
    fn scientific_and_small() {
        assert_eq!(render_decimal(&r(1234567, 1)), "1.23457e6");
        assert_eq!(render_decimal(&r(1, 1000)), "0.001");
        assert_eq!(render_decimal(&r(1, 3_000_000)), "3.33333e-7");
        assert_eq!(render_decimal(&r(-5, 2)), "-2.5");
    }

    #[test]
    fn half_even() {
        // 1000002.5 -> 6 digits: 100000|2.5 -> 1.00000e6
        assert_eq!(render_decimal(&r(2000005, 2)), "1e6");
        // 1234565 exactly halfway between 123456 and 123457 (scaled): even wins.
        assert_eq!(render_decimal(&r(1234565, 1)), "1.23456e6");
        assert_eq!(render_decimal(&r(1234575, 1)), "1.23458e6");
        // rounding carries into a new digit
        assert_eq!(render_decimal(&r(9999995, 1)), "1e7");
    }
}
