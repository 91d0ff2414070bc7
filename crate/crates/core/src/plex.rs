//! Backtracking search and exact counting for k-plexes, transversals and
//! near transversals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::latin::{LatinSquare, WeightMatrix};

pub const MAX_TRANSVERSAL_COUNT_ORDER: usize = 9;
pub const MAX_NEAR_COUNT_ORDER: usize = 8;
pub const MAX_PARITY_ORDER: usize = 7;
pub const MAX_TWO_SYMBOL_ORDER: usize = 8;

/// Node limit for a search. Counting nodes instead of time keeps outcomes
/// identical across machines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
        }
    }
}

/// A 0/1 cell selection meeting every row, column and symbol `k` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlexSelection {
    n: usize,
    k: usize,
    chosen: Vec<bool>,
}

impl PlexSelection {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self) -> usize {
        self.k
    }

    pub fn is_chosen(&self, row: usize, col: usize) -> bool {
        self.chosen[row * self.n + col]
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n)
            .filter(|&i| self.chosen[i])
            .map(|i| (i / self.n, i % self.n))
            .collect()
    }

    pub fn to_weight(&self) -> WeightMatrix {
        WeightMatrix::indicator(self.n, &self.cells())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlexOutcome {
    Found(PlexSelection),
    /// The whole search tree was visited: no k-plex exists.
    Exhausted,
    /// Inconclusive.
    BudgetExceeded,
}

struct PlexSearch<'a> {
    square: &'a LatinSquare,
    n: usize,
    k: usize,
    /// `later[p][s]`: cells holding symbol `s` strictly after position `p`.
    later: Vec<Vec<usize>>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    syms: Vec<usize>,
    chosen: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Dead,
    OutOfBudget,
}

impl PlexSearch<'_> {
    fn run(&mut self, p: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let n = self.n;
        if p == n * n {
            return Step::Found;
        }
        let (i, j) = (p / n, p % n);
        let s = self.square.get(i, j);
        let k = self.k;

        // Leave the cell out while every line through it can still reach k.
        if k - self.rows[i] <= n - 1 - j
            && k - self.cols[j] <= n - 1 - i
            && k - self.syms[s] <= self.later[p][s]
        {
            match self.run(p + 1) {
                Step::Dead => {}
                other => return other,
            }
        }
        if self.rows[i] < k && self.cols[j] < k && self.syms[s] < k {
            self.rows[i] += 1;
            self.cols[j] += 1;
            self.syms[s] += 1;
            self.chosen[p] = true;
            let step = self.run(p + 1);
            if let Step::Found = step {
                return step;
            }
            self.rows[i] -= 1;
            self.cols[j] -= 1;
            self.syms[s] -= 1;
            self.chosen[p] = false;
            return step;
        }
        Step::Dead
    }
}

/// Searches cells in row-major order, excluding before including, so the
/// first k-plex found is canonical for the square.
pub fn find_k_plex(square: &LatinSquare, k: i64, budget: SearchBudget) -> Result<PlexOutcome> {
    let n = square.order();
    if k < 1 || k as u64 > n as u64 {
        return Err(Error::KOutOfRange { k, n });
    }
    let k = k as usize;
    let mut later = vec![vec![0usize; n]; n * n];
    let mut counts = vec![0usize; n];
    for p in (0..n * n).rev() {
        later[p].clone_from(&counts);
        counts[square.cells()[p]] += 1;
    }
    let mut search = PlexSearch {
        square,
        n,
        k,
        later,
        rows: vec![0; n],
        cols: vec![0; n],
        syms: vec![0; n],
        chosen: vec![false; n * n],
        nodes: 0,
        budget: budget.max_nodes,
    };
    Ok(match search.run(0) {
        Step::Found => PlexOutcome::Found(PlexSelection {
            n,
            k,
            chosen: search.chosen,
        }),
        Step::Dead => PlexOutcome::Exhausted,
        Step::OutOfBudget => PlexOutcome::BudgetExceeded,
    })
}

fn check_cap(square: &LatinSquare, cap: usize) -> Result<()> {
    if square.order() > cap {
        return Err(Error::OrderTooLarge {
            order: square.order(),
            cap,
        });
    }
    Ok(())
}

/// Depth-first over rows, choosing one column per row with column and
/// symbol bitmasks; `visit` sees the column of each row at every leaf.
fn each_transversal(square: &LatinSquare, visit: &mut impl FnMut(&[usize])) {
    fn go(
        square: &LatinSquare,
        row: usize,
        cols: u32,
        syms: u32,
        picked: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let n = square.order();
        if row == n {
            visit(picked);
            return;
        }
        for c in 0..n {
            let s = square.get(row, c);
            if cols & (1 << c) != 0 || syms & (1 << s) != 0 {
                continue;
            }
            picked.push(c);
            go(square, row + 1, cols | 1 << c, syms | 1 << s, picked, visit);
            picked.pop();
        }
    }
    go(square, 0, 0, 0, &mut Vec::with_capacity(square.order()), visit);
}

pub fn count_transversals(square: &LatinSquare) -> Result<u64> {
    check_cap(square, MAX_TRANSVERSAL_COUNT_ORDER)?;
    let mut count = 0;
    each_transversal(square, &mut |_| count += 1);
    Ok(count)
}

/// Every transversal as the column chosen in each row, in lexicographic order.
pub fn transversals(square: &LatinSquare) -> Result<Vec<Vec<usize>>> {
    check_cap(square, MAX_TRANSVERSAL_COUNT_ORDER)?;
    let mut out = Vec::new();
    each_transversal(square, &mut |cols| out.push(cols.to_vec()));
    Ok(out)
}

/// A partial transversal of length `n − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearTransversal {
    pub cells: Vec<(usize, usize)>,
    pub missing_row: usize,
    pub missing_col: usize,
    pub missing_symbol: usize,
}

impl NearTransversal {
    fn new(square: &LatinSquare, cells: Vec<(usize, usize)>) -> Self {
        let n = square.order();
        let missing = |used: &mut dyn Iterator<Item = usize>| {
            let mut seen = vec![false; n];
            used.for_each(|v| seen[v] = true);
            seen.iter().position(|&b| !b).expect("one index is missing")
        };
        NearTransversal {
            missing_row: missing(&mut cells.iter().map(|c| c.0)),
            missing_col: missing(&mut cells.iter().map(|c| c.1)),
            missing_symbol: missing(&mut cells.iter().map(|&(r, c)| square.get(r, c))),
            cells,
        }
    }

    /// Not contained in a transversal: the one free cell lacks the missing symbol.
    pub fn is_maximal(&self, square: &LatinSquare) -> bool {
        square.get(self.missing_row, self.missing_col) != self.missing_symbol
    }

    pub fn to_weight(&self, n: usize) -> WeightMatrix {
        WeightMatrix::indicator(n, &self.cells)
    }
}

fn each_near_transversal(square: &LatinSquare, visit: &mut impl FnMut(&[(usize, usize)])) {
    fn go(
        square: &LatinSquare,
        skip: usize,
        row: usize,
        cols: u32,
        syms: u32,
        picked: &mut Vec<(usize, usize)>,
        visit: &mut impl FnMut(&[(usize, usize)]),
    ) {
        let n = square.order();
        if row == n {
            visit(picked);
            return;
        }
        if row == skip {
            return go(square, skip, row + 1, cols, syms, picked, visit);
        }
        for c in 0..n {
            let s = square.get(row, c);
            if cols & (1 << c) != 0 || syms & (1 << s) != 0 {
                continue;
            }
            picked.push((row, c));
            go(square, skip, row + 1, cols | 1 << c, syms | 1 << s, picked, visit);
            picked.pop();
        }
    }
    let mut picked = Vec::with_capacity(square.order());
    for skip in 0..square.order() {
        go(square, skip, 0, 0, 0, &mut picked, visit);
    }
}

/// Counts near transversals; with `maximal_only`, only those that do not
/// extend to a transversal.
pub fn count_near_transversals(square: &LatinSquare, maximal_only: bool) -> Result<u64> {
    check_cap(square, MAX_NEAR_COUNT_ORDER)?;
    let mut count = 0;
    each_near_transversal(square, &mut |cells| {
        if !maximal_only {
            count += 1;
            return;
        }
        let (mut rows, mut cols, mut syms) = (0u32, 0u32, 0u32);
        for &(r, c) in cells {
            rows |= 1 << r;
            cols |= 1 << c;
            syms |= 1 << square.get(r, c);
        }
        let free = |mask: u32| (!mask).trailing_zeros() as usize;
        if square.get(free(rows), free(cols)) != free(syms) {
            count += 1;
        }
    });
    Ok(count)
}

pub fn near_transversals(square: &LatinSquare) -> Result<Vec<NearTransversal>> {
    check_cap(square, MAX_NEAR_COUNT_ORDER)?;
    let mut out = Vec::new();
    each_near_transversal(square, &mut |cells| {
        out.push(NearTransversal::new(square, cells.to_vec()))
    });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NearOutcome {
    Found(NearTransversal),
    Exhausted,
}

/// Row-by-row search for a near transversal, allowing exactly one row to
/// be skipped; columns are tried before the skip.
pub fn find_near_transversal(square: &LatinSquare) -> NearOutcome {
    fn go(
        square: &LatinSquare,
        row: usize,
        skipped: bool,
        cols: &mut Vec<bool>,
        syms: &mut Vec<bool>,
        picked: &mut Vec<(usize, usize)>,
    ) -> bool {
        let n = square.order();
        if row == n {
            return skipped;
        }
        for c in 0..n {
            let s = square.get(row, c);
            if cols[c] || syms[s] {
                continue;
            }
            cols[c] = true;
            syms[s] = true;
            picked.push((row, c));
            if go(square, row + 1, skipped, cols, syms, picked) {
                return true;
            }
            picked.pop();
            cols[c] = false;
            syms[s] = false;
        }
        !skipped && go(square, row + 1, true, cols, syms, picked)
    }
    let n = square.order();
    let mut picked = Vec::with_capacity(n);
    if go(square, 0, false, &mut vec![false; n], &mut vec![false; n], &mut picked) {
        NearOutcome::Found(NearTransversal::new(square, picked))
    } else {
        NearOutcome::Exhausted
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectionOutcome {
    /// Column chosen in each row.
    Found(Vec<usize>),
    Exhausted,
}

/// Looks for one cell per row, in distinct columns, using exactly two
/// distinct symbols.
pub fn two_symbol_selection_search(square: &LatinSquare) -> Result<SelectionOutcome> {
    check_cap(square, MAX_TWO_SYMBOL_ORDER)?;
    fn go(square: &LatinSquare, row: usize, cols: u32, syms: u32, picked: &mut Vec<usize>) -> bool {
        let n = square.order();
        if row == n {
            return syms.count_ones() == 2;
        }
        for c in 0..n {
            if cols & (1 << c) != 0 {
                continue;
            }
            let next = syms | 1 << square.get(row, c);
            if next.count_ones() > 2 {
                continue;
            }
            picked.push(c);
            if go(square, row + 1, cols | 1 << c, next, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    let mut picked = Vec::new();
    Ok(if go(square, 0, 0, 0, &mut picked) {
        SelectionOutcome::Found(picked)
    } else {
        SelectionOutcome::Exhausted
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub transversal_count: u64,
    pub transversal_count_mod2: u64,
    pub near_transversal_count: u64,
    pub near_transversal_count_mod4: u64,
}

/// Transversal and near-transversal counts with their residues. Reports
/// only; no congruence is asserted.
pub fn parity_report(square: &LatinSquare) -> Result<ParityReport> {
    check_cap(square, MAX_PARITY_ORDER)?;
    let t = count_transversals(square)?;
    let nt = count_near_transversals(square, false)?;
    Ok(ParityReport {
        transversal_count: t,
        transversal_count_mod2: t % 2,
        near_transversal_count: nt,
        near_transversal_count_mod4: nt % 4,
    })
}
