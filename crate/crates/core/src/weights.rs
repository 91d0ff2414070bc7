//! Explicit weight constructions valid on every latin square, and the
//! maximality test for near 1-weights on Abelian Cayley tables.

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::latin::{classify, CellTriple, LatinSquare, PartialWeightClass, WeightMatrix};

/// The all-ones n-weight.
pub fn uniform_weight(square: &LatinSquare) -> WeightMatrix {
    WeightMatrix::filled(square.order(), 1)
}

/// A 2-weight centred on `anchor`: `3 − n` on the anchor, `1` on every cell
/// sharing exactly one of row, column or symbol with it, `0` elsewhere.
///
/// Row `x ≠ r` picks up exactly two ones (the cell in column `c` and the
/// cell holding `s`, distinct since the square is latin); row `r` has
/// `n − 1` ones plus the anchor. Columns and symbols follow by symmetry.
pub fn two_weight(square: &LatinSquare, anchor: CellTriple) -> Result<WeightMatrix> {
    if !square.contains(anchor) {
        return Err(Error::InvalidAnchor {
            row: anchor.row,
            col: anchor.col,
            symbol: anchor.symbol,
        });
    }
    let n = square.order();
    let centre = 3 - n as i64;
    let mut w = WeightMatrix::zeros(n);
    for t in square.triples() {
        let agree = usize::from(t.row == anchor.row)
            + usize::from(t.col == anchor.col)
            + usize::from(t.symbol == anchor.symbol);
        let value = match agree {
            3 => centre,
            1 => 1,
            _ => 0,
        };
        w.set(t.row, t.col, value);
    }
    Ok(w)
}

/// For odd `n = 2m + 1`, the 1-weight `γ − m·θ` where `γ` is the uniform
/// n-weight and `θ` the 2-weight anchored at cell `(0, 0)`.
pub fn one_weight_odd(square: &LatinSquare) -> Result<WeightMatrix> {
    one_weight_odd_at(square, square.triple(0, 0))
}

pub fn one_weight_odd_at(square: &LatinSquare, anchor: CellTriple) -> Result<WeightMatrix> {
    let n = square.order();
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    let m = (n / 2) as i64;
    let theta = two_weight(square, anchor)?;
    linear_combine(1, &uniform_weight(square), -m, &theta)
}

/// Entrywise `a·w1 + b·w2`; k-weights combine to an `(a·k1 + b·k2)`-weight.
pub fn linear_combine(a: i64, w1: &WeightMatrix, b: i64, w2: &WeightMatrix) -> Result<WeightMatrix> {
    w2.check_order(w1.order())?;
    let entries = w1
        .entries()
        .iter()
        .zip(w2.entries())
        .map(|(&x, &y)| {
            a.checked_mul(x)
                .zip(b.checked_mul(y))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or(Error::IntegerOverflow)
        })
        .collect::<Result<Vec<_>>>()?;
    WeightMatrix::from_flat(w1.order(), entries)
}

/// The single missing row, column and symbol of a near 1-weight.
fn near_one_missing(group: &AbelianGroup, weight: &WeightMatrix) -> Result<(usize, usize, usize)> {
    let table = group.cayley_table();
    match classify(&table, weight, 1)? {
        PartialWeightClass::Partial {
            missing_rows,
            missing_cols,
            missing_symbols,
            ..
        } if missing_rows.len() == 1 => Ok((missing_rows[0], missing_cols[0], missing_symbols[0])),
        _ => Err(Error::NotANearOneWeight),
    }
}

/// A near 1-weight on a Cayley table missing row `r`, column `c` and symbol
/// `s` is maximal iff `r + c ≠ s`, which happens exactly when the group has
/// a unique involution.
pub fn is_maximal_near_one_weight(group: &AbelianGroup, weight: &WeightMatrix) -> Result<bool> {
    let (r, c, s) = near_one_missing(group, weight)?;
    Ok(group.cayley_table().get(r, c) != s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(WeightMatrix),
    NotExtendable,
}

/// Adds one to cell `(r, c)` when it carries the missing symbol, turning a
/// near 1-weight into a 1-weight.
pub fn extend_near_one_weight(group: &AbelianGroup, weight: &WeightMatrix) -> Result<Extension> {
    let (r, c, s) = near_one_missing(group, weight)?;
    if group.cayley_table().get(r, c) != s {
        return Ok(Extension::NotExtendable);
    }
    let mut out = weight.clone();
    let bumped = out.get(r, c).checked_add(1).ok_or(Error::IntegerOverflow)?;
    out.set(r, c, bumped);
    Ok(Extension::Extended(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::sum_profile;

    fn group(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    fn exact(square: &LatinSquare, w: &WeightMatrix, k: i64) -> bool {
        classify(square, w, k).unwrap() == PartialWeightClass::Exact { k }
    }

    #[test]
    fn uniform() {
        let one = LatinSquare::from_rows(&[[0]]).unwrap();
        assert_eq!(uniform_weight(&one).to_rows(), vec![vec![1]]);
        assert!(exact(&one, &uniform_weight(&one), 1));
        let z3 = group("cyclic:3").cayley_table();
        assert!(sum_profile(&z3, &uniform_weight(&z3)).unwrap().all_sums().all(|s| s == 3));
    }

    #[test]
    fn two_weight_examples() {
        let z3 = group("cyclic:3").cayley_table();
        let w = two_weight(&z3, z3.triple(0, 0)).unwrap();
        assert_eq!(w.to_rows(), vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(exact(&z3, &w, 2));

        let z2 = group("cyclic:2").cayley_table();
        let w = two_weight(&z2, z2.triple(0, 0)).unwrap();
        assert_eq!(w.to_rows(), vec![vec![1, 1], vec![1, 1]]);

        let one = LatinSquare::from_rows(&[[0]]).unwrap();
        assert_eq!(two_weight(&one, one.triple(0, 0)).unwrap().to_rows(), vec![vec![2]]);
    }

    #[test]
    fn invalid_anchor() {
        let z3 = group("cyclic:3").cayley_table();
        let bad = CellTriple { row: 0, col: 0, symbol: 1 };
        assert_eq!(
            two_weight(&z3, bad),
            Err(Error::InvalidAnchor { row: 0, col: 0, symbol: 1 })
        );
        let outside = CellTriple { row: 3, col: 0, symbol: 0 };
        assert!(two_weight(&z3, outside).is_err());
    }

    #[test]
    fn odd_one_weights() {
        let z3 = group("cyclic:3").cayley_table();
        let w = one_weight_odd(&z3).unwrap();
        assert_eq!(w.to_rows(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let z4 = group("cyclic:4").cayley_table();
        assert_eq!(one_weight_odd(&z4), Err(Error::EvenOrder(4)));
        let z5 = group("cyclic:5").cayley_table();
        assert!(exact(&z5, &one_weight_odd(&z5).unwrap(), 1));
    }

    #[test]
    fn combinations() {
        let z3 = group("cyclic:3").cayley_table();
        let gamma = uniform_weight(&z3);
        assert!(linear_combine(1, &gamma, -1, &gamma).unwrap().is_zero());
        let theta = two_weight(&z3, z3.triple(0, 0)).unwrap();
        assert_eq!(
            linear_combine(1, &gamma, -1, &theta).unwrap(),
            one_weight_odd(&z3).unwrap()
        );
        let one = one_weight_odd(&z3).unwrap();
        assert!(exact(&z3, &linear_combine(2, &one, 0, &gamma).unwrap(), 2));
        assert_eq!(
            linear_combine(i64::MAX, &gamma, 1, &gamma),
            Err(Error::IntegerOverflow)
        );
        assert!(linear_combine(1, &gamma, 1, &WeightMatrix::zeros(2)).is_err());
    }

    #[test]
    fn maximality_examples() {
        let z4 = group("cyclic:4");
        let near = WeightMatrix::indicator(4, &[(0, 0), (1, 1), (2, 3)]);
        assert!(is_maximal_near_one_weight(&z4, &near).unwrap());
        assert_eq!(extend_near_one_weight(&z4, &near).unwrap(), Extension::NotExtendable);

        let z3 = group("cyclic:3");
        let near = WeightMatrix::indicator(3, &[(0, 0), (1, 1)]);
        assert!(!is_maximal_near_one_weight(&z3, &near).unwrap());
        let Extension::Extended(full) = extend_near_one_weight(&z3, &near).unwrap() else {
            panic!("Z_3 near transversal should extend");
        };
        assert_eq!(full, WeightMatrix::indicator(3, &[(0, 0), (1, 1), (2, 2)]));

        let klein = group("sum:2,2");
        let near = WeightMatrix::indicator(4, &[(0, 0), (1, 2), (2, 3)]);
        assert!(!is_maximal_near_one_weight(&klein, &near).unwrap());
    }

    #[test]
    fn rejects_non_near_weights() {
        let z3 = group("cyclic:3");
        assert_eq!(
            is_maximal_near_one_weight(&z3, &WeightMatrix::zeros(3)),
            Err(Error::NotANearOneWeight)
        );
        let full = WeightMatrix::indicator(3, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(extend_near_one_weight(&z3, &full), Err(Error::NotANearOneWeight));
    }

    #[test]
    fn signed_near_weights_are_accepted() {
        // The diagonal near transversal of Z_3 plus a zero-sum cycle.
        let z3 = group("cyclic:3");
        let table = z3.cayley_table();
        let two = two_weight(&table, table.triple(0, 0)).unwrap();
        let gamma = uniform_weight(&table);
        let zero_sum = linear_combine(3, &two, -2, &gamma).unwrap();
        let near = WeightMatrix::indicator(3, &[(0, 0), (1, 1)]);
        let twisted = linear_combine(1, &near, 1, &zero_sum).unwrap();
        assert!(twisted.entries().iter().any(|&v| v < 0));
        assert!(!is_maximal_near_one_weight(&z3, &twisted).unwrap());
    }
}
