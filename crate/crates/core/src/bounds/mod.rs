//! Vertex-count bounds for the stochastic tensor polytope, evaluated exactly.
//!
//! `d = (n-1)^3` is the dimension and `f = n^3` the facet count throughout.
//! Binomials follow `C(a, b) = 0` for `b < 0` or `b > a`, and `C(a, 0) = 1`.

mod decimal;
mod permanent;
mod report;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::BoundsError;

pub use decimal::{render_decimal, render_integer_decimal};
pub use permanent::{
    latin_count_shao_wei, latin_count_shao_wei_with_ceiling, permanent, SHAO_WEI_MAX_N,
};
pub use report::{
    bound_report, verify_propositions, BoundReport, BoundReportDocument, PropositionRow,
    Verdicts, LATIN_COUNT_MAX_N,
};

/// `C(a, b)` with the zero conventions for out-of-range arguments.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn to_i64(v: usize) -> i64 {
    i64::try_from(v).expect("argument fits in i64")
}

pub fn dimension_of(n: usize) -> usize {
    (n - 1).pow(3)
}

pub fn facets_of(n: usize) -> usize {
    n.pow(3)
}

/// `(n!)^(2n) / n^(n^2)`, the Latin-square lower bound.
pub fn lower_latin_ratio(n: usize) -> BigRational {
    assert!(n >= 1, "n must be at least 1");
    let num: BigUint = factorial(n as u64).pow(2 * n as u32);
    let den: BigUint = BigUint::from(n).pow((n * n) as u32);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `p(n) = n^3 + 6n^2 - 6n + 2`.
pub fn old_upper_top(n: usize) -> i64 {
    let n = to_i64(n);
    n * n * n + 6 * n * n - 6 * n + 2
}

/// `(1/n^3) · C(p(n), n^3 - 1)`, kept as an exact rational.
pub fn old_upper(n: usize) -> Result<BigRational, BoundsError> {
    if n < 2 {
        return Err(domain("old_upper", format!("n = {n}"), "requires n >= 2"));
    }
    let f = to_i64(facets_of(n));
    let c = binomial(old_upper_top(n), f - 1);
    Ok(BigRational::new(BigInt::from(c), BigInt::from(f)))
}

/// Dual Upper Bound Theorem: the most vertices a `d`-polytope with `f` facets
/// can have.
pub fn ubt_upper(d: usize, f: usize) -> Result<BigUint, BoundsError> {
    if d < 1 || f <= d {
        return Err(domain(
            "ubt_upper",
            format!("d = {d}, f = {f}"),
            "requires d >= 1 and f > d",
        ));
    }
    let (d, f) = (to_i64(d), to_i64(f));
    Ok(binomial(f - (d + 1) / 2, f - d) + binomial(f - (d + 2) / 2, f - d))
}

/// The two binomial tops of the new upper bound and their shared bottom
/// `3n^2 - 3n + 1`.
pub fn new_upper_terms(n: usize) -> ((i64, i64), i64) {
    let (ni, d) = (to_i64(n), to_i64(dimension_of(n)));
    let f = ni * ni * ni;
    ((f - (d + 1) / 2, f - (d + 2) / 2), 3 * ni * ni - 3 * ni + 1)
}

/// Upper bound from the Upper Bound Theorem with `d = (n-1)^3`, `f = n^3`.
pub fn new_upper(n: usize) -> Result<BigUint, BoundsError> {
    if n < 2 {
        return Err(domain("new_upper", format!("n = {n}"), "requires n >= 2"));
    }
    ubt_upper(dimension_of(n), facets_of(n))
}

/// `n^(3n^2)`.
pub fn linial_luria_upper(n: usize) -> Result<BigUint, BoundsError> {
    if n < 2 {
        return Err(domain("linial_luria_upper", format!("n = {n}"), "requires n >= 2"));
    }
    Ok(BigUint::from(n).pow((3 * n * n) as u32))
}

fn u0_raw(d: i64, m: i64) -> BigUint {
    binomial(m - d / 2 - 1, (d - 1) / 2) + binomial(m - (d - 1) / 2 - 1, d / 2)
}

/// `u0^d(m) = C(m - ⌊d/2⌋ - 1, ⌊(d-1)/2⌋) + C(m - ⌊(d-1)/2⌋ - 1, ⌊d/2⌋)`.
pub fn u0(d: usize, m: usize) -> Result<BigUint, BoundsError> {
    if d < 2 || m <= d {
        return Err(domain("u0", format!("d = {d}, m = {m}"), "requires d >= 2 and m > d"));
    }
    Ok(u0_raw(to_i64(d), to_i64(m)))
}

/// Fewest vertices of a `d`-polytope with `x` facets: the `k` with
/// `u0(d, k-1) < x <= u0(d, k)`, found by scanning upward from `k = d + 1`.
pub fn l0(d: usize, x: usize) -> Result<usize, BoundsError> {
    if d < 2 || x <= d {
        return Err(domain("l0", format!("d = {d}, x = {x}"), "requires d >= 2 and x > d"));
    }
    let target = BigUint::from(x);
    let di = to_i64(d);
    let mut k = d + 1;
    loop {
        let upper = u0_raw(di, to_i64(k));
        if target <= upper {
            break;
        }
        k += 1;
    }
    let lower = u0_raw(di, to_i64(k) - 1);
    if lower >= target {
        return Err(domain(
            "l0",
            format!("d = {d}, x = {x}"),
            "no k brackets x between u0(d, k-1) and u0(d, k)",
        ));
    }
    Ok(k)
}

/// `l0((n-1)^3, n^3)`.
pub fn lbt_lower(n: usize) -> Result<usize, BoundsError> {
    if n < 3 {
        return Err(domain(
            "lbt_lower",
            format!("n = {n}"),
            "requires n >= 3 (the dimension (n-1)^3 must be at least 2)",
        ));
    }
    l0(dimension_of(n), facets_of(n))
}

/// Largest `f0` with `f >= (d-1) f0 - (d+1)(d-2)`, the most vertices a
/// simplicial `d`-polytope with `f` facets could have.
pub fn barnette_simplicial_max(d: usize, f: usize) -> Result<BigUint, BoundsError> {
    if d < 2 {
        return Err(domain("barnette_simplicial_max", format!("d = {d}"), "requires d >= 2"));
    }
    let num = BigUint::from(f) + BigUint::from(d + 1) * BigUint::from(d - 2);
    Ok(num.div_floor(&BigUint::from(d - 1)))
}

fn domain(what: &'static str, args: String, reason: &'static str) -> BoundsError {
    BoundsError::Domain { what, args, reason }
}
