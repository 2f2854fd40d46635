//! Ryser permanents of 0-1 matrices and the Shao-Wei Latin square count.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::{binomial, factorial};
use crate::error::BoundsError;

/// Orders above this are refused by [`latin_count_shao_wei`].
pub const SHAO_WEI_MAX_N: usize = 5;

/// Permanent of a square 0-1 matrix by Ryser's inclusion-exclusion formula
/// `per A = (-1)^n Σ_S (-1)^|S| Π_i Σ_{j∈S} a_ij`.
pub fn permanent(matrix: &[Vec<u8>]) -> Result<BigUint, BoundsError> {
    let n = matrix.len();
    let mut masks = Vec::with_capacity(n);
    for (r, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(BoundsError::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        let mut mask = 0u64;
        for (c, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => mask |= 1 << c,
                _ => return Err(BoundsError::NotBinary { row: r, col: c }),
            }
        }
        masks.push(mask);
    }
    if n > 30 {
        return Err(BoundsError::AboveCeiling {
            what: "permanent",
            n,
            ceiling: 30,
        });
    }
    let mut total = BigInt::zero();
    for subset in 0u64..(1 << n) {
        let mut prod = BigInt::from(1);
        for &m in &masks {
            let s = (m & subset).count_ones();
            if s == 0 {
                prod = BigInt::zero();
                break;
            }
            prod *= s;
        }
        if prod.is_zero() {
            continue;
        }
        if (n as u32 - subset.count_ones()).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    debug_assert!(!total.is_negative());
    Ok(total.magnitude().clone())
}

/// Ryser on row masks; only used for `n <= SHAO_WEI_MAX_N`, where every
/// intermediate fits in `i64`.
fn permanent_small(masks: &[u32], n: usize) -> i64 {
    let mut total = 0i64;
    for subset in 1u32..(1 << n) {
        let mut prod = 1i64;
        for &m in masks {
            prod *= (m & subset).count_ones() as i64;
            if prod == 0 {
                break;
            }
        }
        if (n as u32 - subset.count_ones()).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// `L_n = n! Σ_{A ∈ B_n} (-1)^{σ0(A)} C(per A, n)` over all 0-1 matrices.
///
/// Both the permanent and the zero count are invariant under row
/// permutations, so the sum runs over row multisets (nondecreasing row mask
/// sequences) weighted by the number of distinct matrices each represents.
pub fn latin_count_shao_wei(n: usize) -> Result<BigUint, BoundsError> {
    latin_count_shao_wei_with_ceiling(n, SHAO_WEI_MAX_N)
}

pub fn latin_count_shao_wei_with_ceiling(n: usize, ceiling: usize) -> Result<BigUint, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain {
            what: "latin_count_shao_wei",
            args: "n = 0".into(),
            reason: "requires n >= 1",
        });
    }
    // Masks are u32 and the accumulators i128: 2^n row masks must stay tiny.
    let ceiling = ceiling.min(6);
    if n > ceiling {
        return Err(BoundsError::AboveCeiling {
            what: "latin_count_shao_wei",
            n,
            ceiling,
        });
    }
    let n_fact = factorial(n as u64);
    let max_per = (1..=n as i64).product::<i64>();
    // C(p, n) for every attainable permanent p.
    let choose: Vec<i128> = (0..=max_per)
        .map(|p| i128::try_from(binomial(p, n as i64)).expect("C(n!, n) fits in i128"))
        .collect();
    let row_count = 1u32 << n;
    let mut rows = vec![0u32; n];
    let mut sum = 0i128;
    accumulate(&mut rows, 0, 0, row_count, n, &choose, &mut sum);
    debug_assert!(sum >= 0);
    Ok(n_fact * BigUint::try_from(sum).expect("nonnegative sum"))
}

fn accumulate(
    rows: &mut [u32],
    depth: usize,
    min_mask: u32,
    row_count: u32,
    n: usize,
    choose: &[i128],
    sum: &mut i128,
) {
    if depth == n {
        let per = permanent_small(rows, n);
        let c = choose[per as usize];
        if c == 0 {
            return;
        }
        let ones: u32 = rows.iter().map(|r| r.count_ones()).sum();
        let zeros = (n * n) as u32 - ones;
        let sign = if zeros.is_multiple_of(2) { 1 } else { -1 };
        *sum += sign * c * arrangements(rows);
        return;
    }
    for mask in min_mask..row_count {
        rows[depth] = mask;
        accumulate(rows, depth + 1, mask, row_count, n, choose, sum);
    }
}

/// Number of distinct orderings of a sorted row sequence: `n! / Π mult!`.
fn arrangements(sorted: &[u32]) -> i128 {
    let mut result: i128 = (1..=sorted.len() as i128).product();
    let mut run = 1i128;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            result /= run;
        } else {
            run = 1;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permanent_basics() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(permanent(&id).unwrap(), BigUint::from(1u32));
        let ones = vec![vec![1; 3]; 3];
        assert_eq!(permanent(&ones).unwrap(), BigUint::from(6u32));
        let derange = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert_eq!(permanent(&derange).unwrap(), BigUint::from(2u32));
        assert_eq!(permanent(&[]).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn permanent_rejects_bad_input() {
        assert!(matches!(
            permanent(&[vec![1, 0], vec![1]]),
            Err(BoundsError::NotSquare { .. })
        ));
        assert!(matches!(
            permanent(&[vec![2]]),
            Err(BoundsError::NotBinary { row: 0, col: 0 })
        ));
    }

    #[test]
    fn small_matches_general() {
        for bits in 0u32..512 {
            let masks: Vec<u32> = (0..3).map(|r| (bits >> (3 * r)) & 0b111).collect();
            let matrix: Vec<Vec<u8>> = masks
                .iter()
                .map(|m| (0..3).map(|c| ((m >> c) & 1) as u8).collect())
                .collect();
            assert_eq!(
                BigUint::from(permanent_small(&masks, 3) as u64),
                permanent(&matrix).unwrap()
            );
        }
    }

    #[test]
    fn arrangement_counts() {
        assert_eq!(arrangements(&[1, 2, 3]), 6);
        assert_eq!(arrangements(&[1, 1, 3]), 3);
        assert_eq!(arrangements(&[2, 2, 2]), 1);
        assert_eq!(arrangements(&[1, 1, 2, 2]), 6);
    }

    #[test]
    fn shao_wei_small() {
        let counts: Vec<BigUint> = (1..=4).map(|n| latin_count_shao_wei(n).unwrap()).collect();
        assert_eq!(counts, [1u32, 2, 12, 576].map(BigUint::from).to_vec());
    }

    #[test]
    fn shao_wei_ceiling() {
        assert!(matches!(
            latin_count_shao_wei_with_ceiling(4, 3),
            Err(BoundsError::AboveCeiling { n: 4, ceiling: 3, .. })
        ));
        assert!(latin_count_shao_wei(0).is_err());
    }
}
