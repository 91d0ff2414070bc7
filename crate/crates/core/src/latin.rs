//! Latin squares, integer weight functions on their cells, and the
//! row/column/symbol sum profiles used to classify those weights.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A validated latin square of order `n` over the symbols `0..n`.
///
/// Cells are stored row-major. Every row and every column is a permutation
/// of `0..n`; the constructors never produce anything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare {
    n: usize,
    grid: Vec<usize>,
}

/// A cell viewed as a `(row, column, symbol)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CellTriple {
    pub row: usize,
    pub col: usize,
    pub symbol: usize,
}

impl LatinSquare {
    /// Validates a raw grid. Errors name the first offending cell in
    /// row-major order.
    pub fn from_rows<R: AsRef<[i64]>>(raw: &[R]) -> Result<Self> {
        let n = raw.len();
        if n == 0 || raw.iter().any(|row| row.as_ref().len() != n) {
            return Err(Error::NotSquare);
        }
        let mut grid = Vec::with_capacity(n * n);
        let mut col_seen = vec![vec![false; n]; n];
        for (row, cells) in raw.iter().enumerate() {
            let mut row_seen = vec![false; n];
            for (col, &value) in cells.as_ref().iter().enumerate() {
                if value < 0 || value as u64 >= n as u64 {
                    return Err(Error::SymbolOutOfRange { row, col });
                }
                let symbol = value as usize;
                if row_seen[symbol] {
                    return Err(Error::RepeatInRow { row, symbol });
                }
                if col_seen[col][symbol] {
                    return Err(Error::RepeatInColumn { col, symbol });
                }
                row_seen[symbol] = true;
                col_seen[col][symbol] = true;
                grid.push(symbol);
            }
        }
        Ok(LatinSquare { n, grid })
    }

    /// Validates a row-major flat grid of `n * n` entries.
    pub fn from_flat(n: usize, flat: &[usize]) -> Result<Self> {
        if n == 0 || flat.len() != n * n {
            return Err(Error::NotSquare);
        }
        let rows: Vec<Vec<i64>> = flat
            .chunks(n)
            .map(|r| r.iter().map(|&s| s as i64).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Builds a square from a grid that the caller guarantees is latin.
    pub(crate) fn from_flat_unchecked(n: usize, grid: Vec<usize>) -> Self {
        debug_assert_eq!(grid.len(), n * n);
        debug_assert!(Self::from_flat(n, &grid).is_ok());
        LatinSquare { n, grid }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.grid[row * self.n + col]
    }

    pub fn cells(&self) -> &[usize] {
        &self.grid
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.grid.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// All `n²` cells as triples, row-major.
    pub fn triples(&self) -> impl Iterator<Item = CellTriple> + '_ {
        self.grid.iter().enumerate().map(move |(i, &symbol)| CellTriple {
            row: i / self.n,
            col: i % self.n,
            symbol,
        })
    }

    pub fn triple(&self, row: usize, col: usize) -> CellTriple {
        CellTriple {
            row,
            col,
            symbol: self.get(row, col),
        }
    }

    pub fn contains(&self, t: CellTriple) -> bool {
        t.row < self.n && t.col < self.n && self.get(t.row, t.col) == t.symbol
    }

    /// Column holding `symbol` in `row`.
    pub fn column_of(&self, row: usize, symbol: usize) -> usize {
        self.grid[row * self.n..(row + 1) * self.n]
            .iter()
            .position(|&s| s == symbol)
            .expect("every symbol occurs once per row")
    }

    pub fn transpose(&self) -> LatinSquare {
        let n = self.n;
        let grid = (0..n * n).map(|i| self.get(i % n, i / n)).collect();
        LatinSquare { n, grid }
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows())
    }
}

/// An integer weight on the cells of a square, indexed by `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl WeightMatrix {
    pub fn zeros(n: usize) -> Self {
        WeightMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn filled(n: usize, value: i64) -> Self {
        WeightMatrix {
            n,
            entries: vec![value; n * n],
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(raw: &[R]) -> Result<Self> {
        let n = raw.len();
        if n == 0 || raw.iter().any(|row| row.as_ref().len() != n) {
            return Err(Error::NotSquare);
        }
        let entries = raw.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Ok(WeightMatrix { n, entries })
    }

    pub fn from_flat(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::NotSquare);
        }
        Ok(WeightMatrix { n, entries })
    }

    /// 0/1 indicator of a set of cells.
    pub fn indicator(n: usize, cells: &[(usize, usize)]) -> Self {
        let mut w = WeightMatrix::zeros(n);
        for &(r, c) in cells {
            w.entries[r * n + c] = 1;
        }
        w
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.entries[row * self.n + col] = value;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub(crate) fn check_order(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows())
    }
}

fn write_rows<'a, T, I>(f: &mut fmt::Formatter<'_>, rows: I) -> fmt::Result
where
    T: fmt::Display + 'a,
    I: Iterator<Item = &'a [T]>,
{
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        f.write_str("\n")?;
    }
    Ok(())
}

/// Row, column and symbol sums of a weight against a square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumProfile {
    pub row_sums: Vec<i64>,
    pub col_sums: Vec<i64>,
    pub symbol_sums: Vec<i64>,
}

impl SumProfile {
    pub fn order(&self) -> usize {
        self.row_sums.len()
    }

    pub fn all_sums(&self) -> impl Iterator<Item = i64> + '_ {
        self.row_sums
            .iter()
            .chain(&self.col_sums)
            .chain(&self.symbol_sums)
            .copied()
    }
}

pub fn sum_profile(square: &LatinSquare, weight: &WeightMatrix) -> Result<SumProfile> {
    let n = square.order();
    weight.check_order(n)?;
    let mut row_sums = vec![0i64; n];
    let mut col_sums = vec![0i64; n];
    let mut symbol_sums = vec![0i64; n];
    for t in square.triples() {
        let w = weight.get(t.row, t.col);
        for acc in [
            &mut row_sums[t.row],
            &mut col_sums[t.col],
            &mut symbol_sums[t.symbol],
        ] {
            *acc = acc.checked_add(w).ok_or(Error::IntegerOverflow)?;
        }
    }
    Ok(SumProfile {
        row_sums,
        col_sums,
        symbol_sums,
    })
}

/// How a weight relates to the k-weight definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartialWeightClass {
    /// Every row, column and symbol sum is `k`.
    Exact { k: i64 },
    /// `length` sums of each kind equal `k`, the rest are zero.
    Partial {
        k: i64,
        length: usize,
        missing_rows: Vec<usize>,
        missing_cols: Vec<usize>,
        missing_symbols: Vec<usize>,
    },
    Unclassified,
}

impl PartialWeightClass {
    pub fn is_exact(&self) -> bool {
        matches!(self, PartialWeightClass::Exact { .. })
    }

    /// Exact weights count as partial weights of full length.
    pub fn length(&self, n: usize) -> Option<usize> {
        match self {
            PartialWeightClass::Exact { .. } => Some(n),
            PartialWeightClass::Partial { length, .. } => Some(*length),
            PartialWeightClass::Unclassified => None,
        }
    }
}

pub fn classify(square: &LatinSquare, weight: &WeightMatrix, k: i64) -> Result<PartialWeightClass> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let profile = sum_profile(square, weight)?;
    Ok(classify_profile(&profile, k))
}

pub fn classify_profile(profile: &SumProfile, k: i64) -> PartialWeightClass {
    let n = profile.order();
    if profile.all_sums().all(|s| s == k) {
        return PartialWeightClass::Exact { k };
    }
    if profile.all_sums().any(|s| s != k && s != 0) {
        return PartialWeightClass::Unclassified;
    }
    let missing = |sums: &[i64]| -> Vec<usize> {
        sums.iter()
            .enumerate()
            .filter(|(_, &s)| s == 0)
            .map(|(i, _)| i)
            .collect()
    };
    let missing_rows = missing(&profile.row_sums);
    let missing_cols = missing(&profile.col_sums);
    let missing_symbols = missing(&profile.symbol_sums);
    if missing_rows.len() != missing_cols.len() || missing_rows.len() != missing_symbols.len() {
        return PartialWeightClass::Unclassified;
    }
    PartialWeightClass::Partial {
        k,
        length: n - missing_rows.len(),
        missing_rows,
        missing_cols,
        missing_symbols,
    }
}
