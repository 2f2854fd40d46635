//! Exhaustive Latin square enumeration by backtracking.
//!
//! Cells are filled row-major, symbols tried in ascending order, with
//! per-row and per-column used-symbol masks. That visiting order yields the
//! squares already sorted row-major lexicographically.

use crate::tensor::LatinSquare;

/// Largest order the mask representation supports.
pub const MAX_LATIN_ORDER: usize = 31;

struct Search {
    n: usize,
    cells: Vec<usize>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
}

impl Search {
    fn new(n: usize) -> Self {
        assert!(
            (1..=MAX_LATIN_ORDER).contains(&n),
            "Latin square order must be in 1..={MAX_LATIN_ORDER}"
        );
        Self {
            n,
            cells: vec![0; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
        }
    }

    fn run(&mut self, pos: usize, visit: &mut impl FnMut(&[usize])) {
        if pos == self.cells.len() {
            visit(&self.cells);
            return;
        }
        let (r, c) = (pos / self.n, pos % self.n);
        let used = self.row_used[r] | self.col_used[c];
        for s in 0..self.n {
            let bit = 1u32 << s;
            if used & bit != 0 {
                continue;
            }
            self.cells[pos] = s + 1;
            self.row_used[r] |= bit;
            self.col_used[c] |= bit;
            self.run(pos + 1, visit);
            self.row_used[r] &= !bit;
            self.col_used[c] &= !bit;
        }
    }
}

/// All Latin squares of order `n`, row-major lexicographic order.
pub fn enumerate_latin_squares(n: usize) -> Vec<LatinSquare> {
    let mut out = Vec::new();
    Search::new(n).run(0, &mut |cells| {
        out.push(LatinSquare::from_cells(n, cells.to_vec()).expect("search only emits Latin squares"))
    });
    out
}

/// Number of Latin squares of order `n`, without materializing them.
pub fn count_latin_squares(n: usize) -> u64 {
    let mut count = 0u64;
    Search::new(n).run(0, &mut |_| count += 1);
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_latin_squares(1).len(), 1);
        assert_eq!(enumerate_latin_squares(2).len(), 2);
        assert_eq!(enumerate_latin_squares(3).len(), 12);
        assert_eq!(count_latin_squares(3), 12);
    }

    #[test]
    fn output_is_sorted_and_unique() {
        let squares = enumerate_latin_squares(3);
        assert!(squares.windows(2).all(|w| w[0].rows() < w[1].rows()));
        assert_eq!(squares[0].rows(), vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]);
    }
}
