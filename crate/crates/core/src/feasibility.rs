//! Deciding whether a square has a k-weight by solving its incidence system
//! exactly over the integers.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::hnf::{solve_diophantine, to_i64, Certificate, DiophantineOutcome, IntegerMatrix};
use crate::latin::{LatinSquare, WeightMatrix};
use crate::weights::{linear_combine, two_weight};

/// The `3n × n²` 0/1 matrix whose column for cell `(x, y)` has ones at rows
/// `x`, `n + y` and `2n + L(x, y)`. A k-weight is an integer solution of
/// `A·θ = k·1`.
pub fn incidence_matrix(square: &LatinSquare) -> IntegerMatrix {
    let n = square.order();
    let mut a = IntegerMatrix::zeros(3 * n, n * n);
    for t in square.triples() {
        let col = t.row * n + t.col;
        for row in [t.row, n + t.col, 2 * n + t.symbol] {
            a.set(row, col, BigInt::from(1));
        }
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightDecision {
    Feasible(WeightMatrix),
    /// Certificate for `A·θ = k·1` with `A` the incidence matrix.
    Infeasible(Certificate),
}

impl WeightDecision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, WeightDecision::Feasible(_))
    }
}

fn rhs(n: usize, k: i64) -> Vec<BigInt> {
    vec![BigInt::from(k); 3 * n]
}

fn solve_for(square: &LatinSquare, a: &IntegerMatrix, k: i64) -> Result<DiophantineOutcome> {
    solve_diophantine(a, &rhs(square.order(), k))
}

fn witness(n: usize, x: &[BigInt]) -> Result<WeightMatrix> {
    let entries = x.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
    WeightMatrix::from_flat(n, entries)
}

/// Decides whether `square` has a k-weight.
///
/// `k = 0` returns the zero witness. Even `k` scales the anchored 2-weight.
/// Odd `k` solves the `k = 1` system; a 1-weight `W₁` and 2-weight `W₂`
/// give the k-weight `W₁ + ((k − 1)/2)·W₂`. When no 1-weight exists the
/// certificate returned is for the `k` system itself.
pub fn decide_k_weight(square: &LatinSquare, k: i64) -> Result<WeightDecision> {
    let n = square.order();
    if k == 0 {
        return Ok(WeightDecision::Feasible(WeightMatrix::zeros(n)));
    }
    let two = two_weight(square, square.triple(0, 0))?;
    let decision = if k % 2 == 0 {
        WeightDecision::Feasible(linear_combine(k / 2, &two, 0, &two)?)
    } else {
        let a = incidence_matrix(square);
        match solve_for(square, &a, 1)? {
            DiophantineOutcome::Solution(x) => {
                let one = witness(n, &x)?;
                WeightDecision::Feasible(linear_combine(1, &one, (k - 1) / 2, &two)?)
            }
            DiophantineOutcome::Infeasible(cert) if k == 1 => WeightDecision::Infeasible(cert),
            DiophantineOutcome::Infeasible(_) => match solve_for(square, &a, k)? {
                DiophantineOutcome::Infeasible(cert) => WeightDecision::Infeasible(cert),
                // Unreachable: a k-weight minus ((k-1)/2) 2-weights is a 1-weight.
                DiophantineOutcome::Solution(x) => WeightDecision::Feasible(witness(n, &x)?),
            },
        }
    };
    #[cfg(debug_assertions)]
    debug_check(square, k, &decision);
    Ok(decision)
}

#[cfg(debug_assertions)]
fn debug_check(square: &LatinSquare, k: i64, decision: &WeightDecision) {
    use crate::latin::{classify, PartialWeightClass};
    match decision {
        WeightDecision::Feasible(w) => {
            assert_eq!(classify(square, w, k).ok(), Some(PartialWeightClass::Exact { k }));
        }
        WeightDecision::Infeasible(cert) => {
            assert!(cert.verify(&incidence_matrix(square), &rhs(square.order(), k)));
        }
    }
}

/// Every square has k-weights for all even `k`; it has them for all `k`
/// exactly when it has a 1-weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSpectrum {
    AllIntegers,
    EvensOnly,
}

impl WeightSpectrum {
    pub fn label(self) -> &'static str {
        match self {
            WeightSpectrum::AllIntegers => "all",
            WeightSpectrum::EvensOnly => "even",
        }
    }
}

pub fn weight_spectrum(square: &LatinSquare) -> Result<WeightSpectrum> {
    Ok(if decide_k_weight(square, 1)?.is_feasible() {
        WeightSpectrum::AllIntegers
    } else {
        WeightSpectrum::EvensOnly
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use crate::hnf::hermite_decomposition;
    use crate::latin::{classify, PartialWeightClass};
    use num_traits::Zero;

    fn table(spec: &str) -> LatinSquare {
        spec.parse::<AbelianGroup>().unwrap().cayley_table()
    }

    /// Rank over the rationals by fraction-free elimination, independent of the HNF.
    fn rational_rank(a: &IntegerMatrix) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..a.cols() {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && !rows[r][c].is_zero() {
                    let (f, g) = (rows[r][c].clone(), rows[rank][c].clone());
                    let pivot_row = rows[rank].clone();
                    for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                        *x = &*x * &g - &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn incidence_shape() {
        let one = LatinSquare::from_rows(&[[0]]).unwrap();
        let a = incidence_matrix(&one);
        assert_eq!((a.rows(), a.cols()), (3, 1));
        assert!((0..3).all(|r| a.get(r, 0) == &BigInt::from(1)));

        let z5 = table("cyclic:5");
        let a = incidence_matrix(&z5);
        for c in 0..25 {
            let s: BigInt = (0..15).map(|r| a.get(r, c).clone()).sum();
            assert_eq!(s, BigInt::from(3));
        }
        for r in 0..15 {
            let s: BigInt = a.row(r).iter().sum();
            assert_eq!(s, BigInt::from(5));
        }
    }

    #[test]
    fn incidence_rank() {
        for n in 2..=6 {
            let a = incidence_matrix(&table(&format!("cyclic:{n}")));
            assert_eq!(rational_rank(&a), 3 * n - 2, "order {n}");
            assert_eq!(hermite_decomposition(&a).rank(), 3 * n - 2);
        }
    }

    #[test]
    fn decisions() {
        assert!(!decide_k_weight(&table("cyclic:4"), 1).unwrap().is_feasible());
        let klein = table("sum:2,2");
        let WeightDecision::Feasible(w) = decide_k_weight(&klein, 1).unwrap() else {
            panic!("Klein table has transversals");
        };
        assert_eq!(classify(&klein, &w, 1).unwrap(), PartialWeightClass::Exact { k: 1 });
        for k in [-4, -1, 2, 3, 7] {
            let WeightDecision::Feasible(w) = decide_k_weight(&table("cyclic:5"), k).unwrap() else {
                panic!();
            };
            assert!(classify(&table("cyclic:5"), &w, k).unwrap().is_exact());
        }
    }

    #[test]
    fn zero_k_gives_zero_witness() {
        assert_eq!(
            decide_k_weight(&table("cyclic:4"), 0).unwrap(),
            WeightDecision::Feasible(WeightMatrix::zeros(4))
        );
    }

    #[test]
    fn odd_k_certificates_target_their_own_system() {
        let z2 = table("cyclic:2");
        for k in [1, 3, -5] {
            let WeightDecision::Infeasible(cert) = decide_k_weight(&z2, k).unwrap() else {
                panic!("Z_2 has no odd weights");
            };
            assert!(cert.verify(&incidence_matrix(&z2), &rhs(2, k)));
        }
    }

    #[test]
    fn spectra() {
        assert_eq!(weight_spectrum(&table("cyclic:3")).unwrap(), WeightSpectrum::AllIntegers);
        assert_eq!(weight_spectrum(&table("cyclic:4")).unwrap(), WeightSpectrum::EvensOnly);
        assert_eq!(weight_spectrum(&table("sum:2,2")).unwrap(), WeightSpectrum::AllIntegers);
        assert_eq!(weight_spectrum(&table("cyclic:1")).unwrap(), WeightSpectrum::AllIntegers);
    }
}
