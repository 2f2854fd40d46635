//! Stochastic tensors, Latin squares, and the bijection between Latin squares
//! and 0-1 permutation tensors.
//!
//! Indices are zero-based: `entries[i][j][k]` is stored at flat position
//! `(i * n + j) * n + k`. A Latin square cell `(i, j)` holding symbol `s`
//! (in `1..=n`) corresponds to a 1 at `entries[i][j][s - 1]`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::TensorError;

/// Axis summed over in a line-sum condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    J,
    K,
}

/// First condition a candidate tensor fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Negative {
        i: usize,
        j: usize,
        k: usize,
    },
    /// The line along `axis` through the two fixed indices (in their natural
    /// order) does not sum to 1.
    LineSum {
        axis: Axis,
        fixed: (usize, usize),
        sum: BigRational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Negative { i, j, k } => write!(f, "entry ({i},{j},{k}) < 0"),
            Violation::LineSum { axis, fixed, sum } => {
                let (a, b) = fixed;
                let (name, fixed) = match axis {
                    Axis::I => ("i", format!("j={a},k={b}")),
                    Axis::J => ("j", format!("i={a},k={b}")),
                    Axis::K => ("k", format!("i={a},j={b}")),
                };
                write!(f, "line sum over {name} at ({fixed}) is {sum}, expected 1")
            }
        }
    }
}

#[inline]
pub fn flat_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

/// Inverse of [`flat_index`].
#[inline]
pub fn unflatten(n: usize, idx: usize) -> (usize, usize, usize) {
    (idx / (n * n), (idx / n) % n, idx % n)
}

/// Checks nonnegativity, then the line sums over `i`, `j` and `k` in that
/// order, each family scanned lexicographically by its fixed indices.
pub fn validate(n: usize, entries: &[BigRational]) -> Result<(), Violation> {
    assert_eq!(entries.len(), n * n * n, "entries must form an n*n*n grid");
    for (idx, v) in entries.iter().enumerate() {
        if v < &BigRational::zero() {
            let (i, j, k) = unflatten(n, idx);
            return Err(Violation::Negative { i, j, k });
        }
    }
    let one = BigRational::one();
    for axis in [Axis::I, Axis::J, Axis::K] {
        for a in 0..n {
            for b in 0..n {
                let sum: BigRational = (0..n)
                    .map(|t| {
                        let (i, j, k) = match axis {
                            Axis::I => (t, a, b),
                            Axis::J => (a, t, b),
                            Axis::K => (a, b, t),
                        };
                        &entries[flat_index(n, i, j, k)]
                    })
                    .sum();
                if sum != one {
                    return Err(Violation::LineSum {
                        axis,
                        fixed: (a, b),
                        sum,
                    });
                }
            }
        }
    }
    Ok(())
}

/// A point of the stochastic tensor polytope: an `n x n x n` array of
/// nonnegative rationals whose axis-parallel lines all sum to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StochasticTensor {
    n: usize,
    entries: Vec<BigRational>,
}

impl StochasticTensor {
    /// Validates and wraps a flat entry list.
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self, TensorError> {
        if n == 0 {
            return Err(TensorError::ZeroDimension);
        }
        if entries.len() != n * n * n {
            return Err(TensorError::Ragged {
                path: "entries".into(),
                expected: n * n * n,
                found: entries.len(),
            });
        }
        validate(n, &entries).map_err(TensorError::Invalid)?;
        Ok(Self { n, entries })
    }

    /// Validates a nested `entries[i][j][k]` grid.
    pub fn from_nested(grid: Vec<Vec<Vec<BigRational>>>) -> Result<Self, TensorError> {
        let n = grid.len();
        if n == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for (i, plane) in grid.into_iter().enumerate() {
            if plane.len() != n {
                return Err(TensorError::Ragged {
                    path: format!("entries[{i}]"),
                    expected: n,
                    found: plane.len(),
                });
            }
            for (j, line) in plane.into_iter().enumerate() {
                if line.len() != n {
                    return Err(TensorError::Ragged {
                        path: format!("entries[{i}][{j}]"),
                        expected: n,
                        found: line.len(),
                    });
                }
                flat.extend(line);
            }
        }
        Self::new(n, flat)
    }

    /// The caller guarantees the entries already satisfy every condition.
    pub(crate) fn from_valid(n: usize, entries: Vec<BigRational>) -> Self {
        debug_assert!(validate(n, &entries).is_ok());
        Self { n, entries }
    }

    /// The uniform tensor with every entry `1/n`.
    pub fn uniform(n: usize) -> Result<Self, TensorError> {
        if n == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let v = BigRational::new(BigInt::one(), BigInt::from(n));
        Ok(Self::from_valid(n, vec![v; n * n * n]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.entries[flat_index(self.n, i, j, k)]
    }

    /// Flat entries in `(i, j, k)` lexicographic order.
    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.entries
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<BigRational>>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.get(i, j, k).clone()).collect())
                    .collect()
            })
            .collect()
    }

    /// True iff every entry is 0 or 1.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// Inverse of [`LatinSquare::to_tensor`]; `None` when some entry is not 0 or 1.
    pub fn to_latin(&self) -> Option<LatinSquare> {
        if !self.is_integral() {
            return None;
        }
        let n = self.n;
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // Line sums force exactly one 1 along k.
                let k = (0..n).find(|&k| self.get(i, j, k).is_one())?;
                cells.push(k + 1);
            }
        }
        Some(LatinSquare { n, cells })
    }

    /// Weighted sum of tensors. Weights must be nonnegative and sum to 1, and
    /// all tensors must share the same `n`.
    pub fn convex_combination(terms: &[(BigRational, &StochasticTensor)]) -> Result<Self, TensorError> {
        let Some((_, first)) = terms.first() else {
            return Err(TensorError::ZeroDimension);
        };
        let n = first.n;
        let mut acc = vec![BigRational::zero(); n * n * n];
        for (w, t) in terms {
            if t.n != n {
                return Err(TensorError::Ragged {
                    path: "entries".into(),
                    expected: n * n * n,
                    found: t.entries.len(),
                });
            }
            for (a, v) in acc.iter_mut().zip(&t.entries) {
                if !v.is_zero() {
                    *a += w * v;
                }
            }
        }
        Self::new(n, acc)
    }
}

/// An `n x n` array over symbols `1..=n`, each symbol once per row and column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    /// Validates a row-major list of rows.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TensorError> {
        let n = rows.len();
        if n == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(TensorError::Ragged {
                    path: format!("cells[{i}]"),
                    expected: n,
                    found: row.len(),
                });
            }
            cells.extend(row);
        }
        Self::from_cells(n, cells)
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<usize>) -> Result<Self, TensorError> {
        for (idx, &s) in cells.iter().enumerate() {
            if s == 0 || s > n {
                return Err(TensorError::SymbolOutOfRange {
                    row: idx / n,
                    col: idx % n,
                    symbol: s,
                    n,
                });
            }
        }
        for line in 0..n {
            let mut row_seen = vec![false; n + 1];
            let mut col_seen = vec![false; n + 1];
            for t in 0..n {
                let r = cells[line * n + t];
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(TensorError::NotLatin {
                        line: "row",
                        index: line,
                        symbol: r,
                    });
                }
                let c = cells[t * n + line];
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(TensorError::NotLatin {
                        line: "column",
                        index: line,
                        symbol: c,
                    });
                }
            }
        }
        Ok(Self { n, cells })
    }

    /// `cells[i][j] = (i + j) mod n + 1`.
    pub fn cyclic(n: usize) -> Result<Self, TensorError> {
        if n == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let cells = (0..n * n).map(|idx| (idx / n + idx % n) % n + 1).collect();
        Ok(Self { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// The 0-1 permutation tensor with a 1 at `(i, j, cells[i][j] - 1)`.
    pub fn to_tensor(&self) -> StochasticTensor {
        let n = self.n;
        let mut entries = vec![BigRational::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                entries[flat_index(n, i, j, self.get(i, j) - 1)] = BigRational::one();
            }
        }
        StochasticTensor::from_valid(n, entries)
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.cells.chunks(self.n).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Largest denominator of the weights drawn by [`random_tensor`].
pub const RANDOM_WEIGHT_DENOMINATOR_CAP: u32 = 1000;

/// Deterministic pseudo-random point of the polytope: a rational convex
/// combination of between two and six Latin-square tensors. Each square is the
/// cyclic square with its rows, columns and symbols shuffled. Each weight is
/// `w / W` with integer `w` in `1..=100` and `W <= 600`.
pub fn random_tensor(n: usize, seed: u64) -> Result<StochasticTensor, TensorError> {
    if n == 0 {
        return Err(TensorError::ZeroDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = rng.gen_range(2..=6usize);
    let mut squares = Vec::with_capacity(terms);
    let mut weights = Vec::with_capacity(terms);
    for _ in 0..terms {
        squares.push(random_latin_square(n, &mut rng));
        weights.push(rng.gen_range(1..=100u32));
    }
    let total: u32 = weights.iter().sum();
    debug_assert!(total <= RANDOM_WEIGHT_DENOMINATOR_CAP);
    let tensors: Vec<StochasticTensor> = squares.iter().map(LatinSquare::to_tensor).collect();
    let combo: Vec<(BigRational, &StochasticTensor)> = weights
        .iter()
        .zip(&tensors)
        .map(|(&w, t)| (BigRational::new(w.into(), total.into()), t))
        .collect();
    StochasticTensor::convex_combination(&combo)
}

fn random_latin_square(n: usize, rng: &mut ChaCha8Rng) -> LatinSquare {
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut symbols: Vec<usize> = (1..=n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    symbols.shuffle(rng);
    let mut cells = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            cells[rows[i] * n + cols[j]] = symbols[(i + j) % n];
        }
    }
    LatinSquare { n, cells }
}
