//! Block patterns: squares built from `q × q` latin blocks whose symbol
//! sets follow a smaller base square, and the projection of weights onto
//! that base.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::latin::{LatinSquare, WeightMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub base_order: usize,
    pub block_size: usize,
    /// The base square whose pattern the blocks follow.
    pub pattern: LatinSquare,
    /// Symbols of the big square carried by each pattern symbol, sorted.
    pub symbol_sets: Vec<Vec<usize>>,
}

impl BlockStructure {
    /// Pattern symbol owning each symbol of the big square.
    fn owner_of_symbols(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.base_order * self.block_size];
        for (p, set) in self.symbol_sets.iter().enumerate() {
            for &s in set {
                if s < owner.len() {
                    owner[s] = p;
                }
            }
        }
        owner
    }
}

/// The square `L'(x, y) = q·base(⌊x/q⌋, ⌊y/q⌋) + (x + y) mod q`, whose
/// blocks are cyclic squares on the symbol ranges `[q·s, q·s + q)`.
pub fn step_type(base: &LatinSquare, q: usize) -> Result<(LatinSquare, BlockStructure)> {
    if q == 0 {
        return Err(Error::InvalidArgument("block size must be positive".into()));
    }
    let m = base.order();
    let n = m.checked_mul(q).ok_or(Error::IntegerOverflow)?;
    n.checked_mul(n).ok_or(Error::IntegerOverflow)?;
    let grid = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            q * base.get(x / q, y / q) + (x + y) % q
        })
        .collect();
    let square = LatinSquare::from_flat_unchecked(n, grid);
    let structure = BlockStructure {
        base_order: m,
        block_size: q,
        pattern: base.clone(),
        symbol_sets: (0..m).map(|s| (q * s..q * s + q).collect()).collect(),
    };
    Ok((square, structure))
}

/// Looks for the aligned, contiguous `q × q` block partition of `square`.
///
/// Succeeds when every block is latin on some `q`-set of symbols and the
/// blocks, labelled by their symbol sets, form a latin square. Pattern
/// symbols are numbered by first appearance in row-major block order.
/// Row and column permutations are not searched.
pub fn detect_block_pattern(square: &LatinSquare, q: usize) -> Result<Option<BlockStructure>> {
    let n = square.order();
    if q == 0 || n % q != 0 {
        return Err(Error::QDoesNotDivideOrder { q, order: n });
    }
    let m = n / q;
    let mut set_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut pattern = Vec::with_capacity(m * m);
    for bi in 0..m {
        for bj in 0..m {
            let Some(set) = block_symbol_set(square, q, bi, bj) else {
                return Ok(None);
            };
            let next = sets.len();
            let id = *set_ids.entry(set.clone()).or_insert_with(|| {
                sets.push(set);
                next
            });
            pattern.push(id);
        }
    }
    // Distinct q-sets that together cover n symbols with m of them must partition.
    if sets.len() != m {
        return Ok(None);
    }
    let mut covered = vec![false; n];
    for &s in sets.iter().flatten() {
        if covered[s] {
            return Ok(None);
        }
        covered[s] = true;
    }
    let Ok(pattern) = LatinSquare::from_flat(m, &pattern) else {
        return Ok(None);
    };
    Ok(Some(BlockStructure {
        base_order: m,
        block_size: q,
        pattern,
        symbol_sets: sets,
    }))
}

/// Sorted symbol set of block `(bi, bj)` if the block is latin on it.
fn block_symbol_set(square: &LatinSquare, q: usize, bi: usize, bj: usize) -> Option<Vec<usize>> {
    let mut set: Vec<usize> = (0..q).map(|c| square.get(bi * q, bj * q + c)).collect();
    set.sort_unstable();
    for r in 0..q {
        let mut row: Vec<usize> = (0..q).map(|c| square.get(bi * q + r, bj * q + c)).collect();
        row.sort_unstable();
        if row != set {
            return None;
        }
    }
    // Rows of a latin square never repeat a symbol, and every block row uses
    // the same q symbols, so each block column is automatically a permutation
    // of the set as well.
    Some(set)
}

/// Sums `weight` over each block, giving a weight on the base square. A
/// k-weight of the big square projects to a `q·k`-weight of the base.
pub fn block_projection(
    square: &LatinSquare,
    structure: &BlockStructure,
    weight: &WeightMatrix,
) -> Result<WeightMatrix> {
    let n = square.order();
    weight.check_order(n)?;
    let (m, q) = (structure.base_order, structure.block_size);
    if m.checked_mul(q) != Some(n)
        || structure.pattern.order() != m
        || structure.symbol_sets.len() != m
        || structure.symbol_sets.iter().any(|s| s.len() != q)
    {
        return Err(Error::InconsistentBlockStructure);
    }
    let owner = structure.owner_of_symbols();
    let mut projected = WeightMatrix::zeros(m);
    for t in square.triples() {
        let (bi, bj) = (t.row / q, t.col / q);
        if owner[t.symbol] != structure.pattern.get(bi, bj) {
            return Err(Error::InconsistentBlockStructure);
        }
        let acc = projected
            .get(bi, bj)
            .checked_add(weight.get(t.row, t.col))
            .ok_or(Error::IntegerOverflow)?;
        projected.set(bi, bj, acc);
    }
    Ok(projected)
}
