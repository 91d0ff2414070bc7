//! Exhaustive survey of squares without odd weights at small orders.
//!
//! For every square of the given order the weight spectrum is decided.
//! Each square with only even weights is compared against the `q`-step
//! squares over `Z_{2m}` (all `q` with `q·2m = n`) in two ways: literal
//! aligned block detection, and a brute-force isotopy test. The report only
//! records what it finds.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{enumerate_squares, MAX_ENUMERATION_ORDER};
use crate::error::{Error, Result};
use crate::feasibility::{weight_spectrum, WeightSpectrum};
use crate::group::AbelianGroup;
use crate::latin::LatinSquare;
use crate::pattern::{detect_block_pattern, step_type};

/// Whether independent row, column and symbol permutations carry `a` to `b`.
/// Brute force over row and column permutations; meant for orders ≤ 5.
pub fn is_isotopic(a: &LatinSquare, b: &LatinSquare) -> bool {
    let n = a.order();
    if b.order() != n {
        return false;
    }
    let perms = permutations(n);
    let mut gamma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    perms.iter().any(|alpha| {
        perms.iter().any(|beta| {
            gamma.fill(usize::MAX);
            used.fill(false);
            (0..n).all(|x| {
                (0..n).all(|y| {
                    let from = a.get(x, y);
                    let to = b.get(alpha[x], beta[y]);
                    match gamma[from] {
                        usize::MAX if !used[to] => {
                            gamma[from] = to;
                            used[to] = true;
                            true
                        }
                        g => g == to,
                    }
                })
            })
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A `q`-step square over the cyclic group of even order `n / q`.
#[derive(Debug, Clone)]
struct ReferenceSquare {
    label: String,
    base: AbelianGroup,
    q: usize,
    square: LatinSquare,
}

fn reference_squares(n: usize) -> Vec<ReferenceSquare> {
    (1..=n)
        .filter(|q| n % q == 0 && (n / q) % 2 == 0)
        .map(|q| {
            let base = AbelianGroup::cyclic(n / q).expect("positive order");
            let (square, _) = step_type(&base.cayley_table(), q).expect("small order");
            ReferenceSquare {
                label: format!("step({base},q={q})"),
                base,
                q,
                square,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub label: String,
    pub base: String,
    pub q: usize,
    pub odd_block: bool,
    /// Squares of this order isotopic to the reference square.
    pub isotopic_total: usize,
    pub isotopic_evens_only: usize,
    /// The evens-only squares are exactly this isotopy class.
    pub matches_evens_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignedDetection {
    pub q: usize,
    pub base: String,
    pub detected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvensOnlySquare {
    /// Position in the lexicographic enumeration.
    pub index: usize,
    pub grid: Vec<Vec<usize>>,
    pub aligned: Vec<AlignedDetection>,
    pub isotopic_to: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub version: u32,
    pub order: usize,
    pub total_squares: usize,
    pub all_integers: usize,
    pub evens_only: usize,
    pub classes: Vec<ClassSummary>,
    pub evens_only_squares: Vec<EvensOnlySquare>,
}

struct Row {
    index: usize,
    square: LatinSquare,
    spectrum: WeightSpectrum,
    isotopic: Vec<bool>,
}

pub fn survey_no_odd_weight(order: usize) -> Result<SurveyReport> {
    if order > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            cap: MAX_ENUMERATION_ORDER,
        });
    }
    let refs = reference_squares(order);
    let mut rows = enumerate_squares(order)?
        .enumerate()
        .par_bridge()
        .map(|(index, square)| {
            let spectrum = weight_spectrum(&square)?;
            let isotopic = refs.iter().map(|r| is_isotopic(&square, &r.square)).collect();
            Ok(Row {
                index,
                square,
                spectrum,
                isotopic,
            })
        })
        .collect::<Result<Vec<Row>>>()?;
    rows.sort_by_key(|r| r.index);

    let evens: Vec<&Row> = rows
        .iter()
        .filter(|r| r.spectrum == WeightSpectrum::EvensOnly)
        .collect();
    let classes = refs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let total = rows.iter().filter(|row| row.isotopic[i]).count();
            let in_evens = evens.iter().filter(|row| row.isotopic[i]).count();
            ClassSummary {
                label: r.label.clone(),
                base: r.base.to_string(),
                q: r.q,
                odd_block: r.q % 2 == 1,
                isotopic_total: total,
                isotopic_evens_only: in_evens,
                matches_evens_only: total == in_evens && in_evens == evens.len(),
            }
        })
        .collect();
    let evens_only_squares = evens
        .iter()
        .map(|row| {
            let aligned = refs
                .iter()
                .map(|r| {
                    let detected = detect_block_pattern(&row.square, r.q)
                        .ok()
                        .flatten()
                        .is_some_and(|bs| is_isotopic(&bs.pattern, &r.base.cayley_table()));
                    AlignedDetection {
                        q: r.q,
                        base: r.base.to_string(),
                        detected,
                    }
                })
                .collect();
            let isotopic_to = refs
                .iter()
                .zip(&row.isotopic)
                .filter(|(_, &iso)| iso)
                .map(|(r, _)| r.label.clone())
                .collect();
            EvensOnlySquare {
                index: row.index,
                grid: row.square.to_rows(),
                aligned,
                isotopic_to,
            }
        })
        .collect();
    Ok(SurveyReport {
        version: 1,
        order,
        total_squares: rows.len(),
        all_integers: rows.len() - evens.len(),
        evens_only: evens.len(),
        classes,
        evens_only_squares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(spec: &str) -> LatinSquare {
        spec.parse::<AbelianGroup>().unwrap().cayley_table()
    }

    #[test]
    fn isotopy() {
        assert!(is_isotopic(&table("cyclic:4"), &table("cyclic:4")));
        assert!(!is_isotopic(&table("cyclic:4"), &table("sum:2,2")));
        assert!(is_isotopic(&table("cyclic:4"), &table("cyclic:4").transpose()));
        let relabelled = LatinSquare::from_rows(&[[2, 0, 1], [0, 1, 2], [1, 2, 0]]).unwrap();
        assert!(is_isotopic(&relabelled, &table("cyclic:3")));
        assert!(!is_isotopic(&table("cyclic:3"), &table("cyclic:2")));
    }

    #[test]
    fn order_three_has_no_evens_only_squares() {
        let r = survey_no_odd_weight(3).unwrap();
        assert_eq!((r.total_squares, r.evens_only), (12, 0));
        assert!(r.classes.is_empty());
    }

    #[test]
    fn order_two() {
        let r = survey_no_odd_weight(2).unwrap();
        assert_eq!((r.total_squares, r.evens_only), (2, 2));
        assert_eq!(r.classes.len(), 1);
        assert!(r.classes[0].matches_evens_only);
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            survey_no_odd_weight(6),
            Err(Error::OrderTooLarge { order: 6, cap: 5 })
        ));
    }
}
