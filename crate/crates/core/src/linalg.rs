//! Dense exact linear algebra over the rationals.
//!
//! Everything here is Gaussian elimination on [`BigRational`] entries. The
//! pivot in each column is the candidate entry with the smallest bit length
//! (numerator plus denominator), ties going to the lowest row index, so every
//! result is deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.entries[i * size + i] = BigRational::one();
        }
        m
    }

    /// Builds a matrix from a list of rows; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Result<Self, LinalgError> {
        Self::new(
            rows,
            cols,
            values.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigRational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigRational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Appends one row in place.
    pub fn push_row(&mut self, row: Vec<BigRational>) -> Result<(), LinalgError> {
        if row.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(self.cols);
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per free column in
    /// ascending column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<BigRational>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    /// One exact solution of `self * x = b` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Result<Option<Vec<BigRational>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let width = self.cols + 1;
        let mut entries = Vec::with_capacity(self.rows * width);
        for (r, rhs) in b.iter().enumerate() {
            entries.extend_from_slice(self.row(r));
            entries.push(rhs.clone());
        }
        let mut aug = Self {
            rows: self.rows,
            cols: width,
            entries,
        };
        // Only the coefficient columns are eligible as pivots; a nonzero left
        // in the last column of a zero row means inconsistency.
        let pivots = aug.reduce_in_place(self.cols);
        for r in pivots.len()..aug.rows {
            if !aug.get(r, self.cols).is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Gauss-Jordan elimination over the first `pivot_cols` columns.
    fn reduce_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..pivot_cols {
            if next == self.rows {
                break;
            }
            let Some(pr) = (next..self.rows)
                .filter(|&r| !self.get(r, col).is_zero())
                .min_by_key(|&r| (bit_length(self.get(r, col)), r))
            else {
                continue;
            };
            self.swap_rows(next, pr);
            let inv = self.get(next, col).recip();
            for c in col..self.cols {
                let v = &self.entries[next * self.cols + c] * &inv;
                self.entries[next * self.cols + c] = v;
            }
            for r in 0..self.rows {
                if r == next || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let delta = &factor * &self.entries[next * self.cols + c];
                    if !delta.is_zero() {
                        self.entries[r * self.cols + c] -= delta;
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Output of [`RationalMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: RationalMatrix,
    pub pivots: Vec<usize>,
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn bit_length(v: &BigRational) -> u64 {
    v.numer().bits() + v.denom().bits()
}

/// Rank of a list of integer rows, all of length `cols`.
pub fn integer_rank(rows: &[&[BigInt]], cols: usize) -> usize {
    let data = rows
        .iter()
        .flat_map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())))
        .collect();
    RationalMatrix {
        rows: rows.len(),
        cols,
        entries: data,
    }
    .rank()
}

/// Least common multiple of the denominators, times the row, as integers.
pub fn scale_to_integers(row: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|v| (v.numer() * &lcm) / v.denom())
        .collect()
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        let g = g.abs();
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}
