//! Exhaustive enumeration of small latin squares and seeded generation of
//! larger ones.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::latin::LatinSquare;

pub const MAX_ENUMERATION_ORDER: usize = 5;

/// Streams every latin square of order `n` exactly once, in lexicographic
/// order of the row-major grid.
pub fn enumerate_squares(n: usize) -> Result<SquareEnumerator> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            cap: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(SquareEnumerator::new(n))
}

/// Resumable backtracking cursor behind [`enumerate_squares`].
#[derive(Debug, Clone)]
pub struct SquareEnumerator {
    n: usize,
    grid: Vec<usize>,
    placed: Vec<bool>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    pos: usize,
    started: bool,
    done: bool,
}

impl SquareEnumerator {
    fn new(n: usize) -> Self {
        SquareEnumerator {
            n,
            grid: vec![0; n * n],
            placed: vec![false; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            pos: 0,
            started: false,
            done: false,
        }
    }

    /// Runs the search forward until the grid is complete or the tree is exhausted.
    fn advance(&mut self) -> bool {
        let n = self.n;
        let total = n * n;
        loop {
            if self.pos == total {
                return true;
            }
            let p = self.pos;
            let (r, c) = (p / n, p % n);
            let start = if self.placed[p] {
                let v = self.grid[p];
                self.row_used[r] &= !(1 << v);
                self.col_used[c] &= !(1 << v);
                self.placed[p] = false;
                v + 1
            } else {
                0
            };
            let blocked = self.row_used[r] | self.col_used[c];
            match (start..n).find(|&s| blocked & (1 << s) == 0) {
                Some(s) => {
                    self.grid[p] = s;
                    self.placed[p] = true;
                    self.row_used[r] |= 1 << s;
                    self.col_used[c] |= 1 << s;
                    self.pos += 1;
                }
                None if p == 0 => return false,
                None => self.pos -= 1,
            }
        }
    }
}

impl Iterator for SquareEnumerator {
    type Item = LatinSquare;

    fn next(&mut self) -> Option<LatinSquare> {
        if self.done {
            return None;
        }
        if self.started {
            self.pos = self.n * self.n - 1;
        }
        self.started = true;
        if self.advance() {
            Some(LatinSquare::from_flat_unchecked(self.n, self.grid.clone()))
        } else {
            self.done = true;
            None
        }
    }
}

/// A deterministic pseudo-random latin square.
///
/// Rows are filled one at a time; each row is a backtracking search for a
/// permutation avoiding the symbols already used in every column, trying
/// symbols in a seed-shuffled order. A partial latin rectangle always
/// extends by a row, so no cross-row backtracking is needed. The output is
/// NOT uniformly distributed over latin squares.
pub fn random_square(n: usize, seed: u64) -> Result<LatinSquare> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut col_used = vec![vec![false; n]; n];
    let mut grid = Vec::with_capacity(n * n);
    for _ in 0..n {
        let orders: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(&mut rng);
                v
            })
            .collect();
        let mut row = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let ok = fill_row(0, &orders, &col_used, &mut used, &mut row);
        debug_assert!(ok, "latin rectangles always extend");
        for (c, &s) in row.iter().enumerate() {
            col_used[c][s] = true;
        }
        grid.extend(row);
    }
    Ok(LatinSquare::from_flat_unchecked(n, grid))
}

fn fill_row(
    col: usize,
    orders: &[Vec<usize>],
    col_used: &[Vec<bool>],
    used: &mut [bool],
    row: &mut [usize],
) -> bool {
    if col == row.len() {
        return true;
    }
    for &s in &orders[col] {
        if used[s] || col_used[col][s] {
            continue;
        }
        used[s] = true;
        row[col] = s;
        if fill_row(col + 1, orders, col_used, used, row) {
            return true;
        }
        used[s] = false;
    }
    false
}
