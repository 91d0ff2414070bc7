//! Exact integer matrices, column-style Hermite normal form, and linear
//! Diophantine solving with rational infeasibility certificates.
//!
//! `hermite_normal_form(A)` returns `(H, U)` with `A·U = H`, `U` unimodular
//! and `H` lower echelon: each nonzero column has a positive pivot in a
//! strictly later row than the previous column's pivot, entries to the left
//! of a pivot lie in `[0, pivot)`, and zero columns come last.
//!
//! Rows are processed top to bottom. Within a row, the active column with
//! the smallest nonzero absolute entry (lowest column index on ties)
//! repeatedly reduces the others until one nonzero entry remains.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)))
            .collect();
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn col_sub_mul(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let delta = factor * &self.data[r * self.cols + src];
            self.data[r * self.cols + dst] -= delta;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = &mut self.data[r * self.cols + c];
            *v = -std::mem::take(v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for c in 0..n {
                    m.swap(k * n + c, swap * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = v / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        Ok(sign * &m[n * n - 1])
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `A·U = H` together with the pivot row of each nonzero column of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    pub pivot_rows: Vec<usize>,
}

impl HermiteDecomposition {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let d = hermite_decomposition(a);
    (d.h, d.u)
}

pub fn hermite_decomposition(a: &IntegerMatrix) -> HermiteDecomposition {
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(a.cols);
    let mut pivot_rows = Vec::new();
    let mut p = 0;
    for i in 0..h.rows {
        if p == h.cols {
            break;
        }
        loop {
            let Some(j0) = (p..h.cols)
                .filter(|&j| !h.get(i, j).is_zero())
                .min_by(|&x, &y| h.get(i, x).abs().cmp(&h.get(i, y).abs()).then(x.cmp(&y)))
            else {
                break;
            };
            let pivot = h.get(i, j0).clone();
            let mut remaining = false;
            for j in p..h.cols {
                if j == j0 || h.get(i, j).is_zero() {
                    continue;
                }
                let q = h.get(i, j) / &pivot;
                h.col_sub_mul(j, j0, &q);
                u.col_sub_mul(j, j0, &q);
                remaining |= !h.get(i, j).is_zero();
            }
            if remaining {
                continue;
            }
            h.swap_cols(p, j0);
            u.swap_cols(p, j0);
            if h.get(i, p).is_negative() {
                h.negate_col(p);
                u.negate_col(p);
            }
            let pivot = h.get(i, p).clone();
            for j in 0..p {
                let q = h.get(i, j).div_floor(&pivot);
                if !q.is_zero() {
                    h.col_sub_mul(j, p, &q);
                    u.col_sub_mul(j, p, &q);
                }
            }
            pivot_rows.push(i);
            p += 1;
            break;
        }
    }
    HermiteDecomposition { h, u, pivot_rows }
}

/// Checks the column-style Hermite conditions listed in the module docs.
pub fn is_hermite(h: &IntegerMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_col = false;
    for j in 0..h.cols {
        let first = (0..h.rows).find(|&r| !h.get(r, j).is_zero());
        let Some(r) = first else {
            seen_zero_col = true;
            continue;
        };
        if seen_zero_col || last_pivot.is_some_and(|lp| r <= lp) {
            return false;
        }
        let pivot = h.get(r, j);
        if !pivot.is_positive() {
            return false;
        }
        if (0..j).any(|c| h.get(r, c).is_negative() || h.get(r, c) >= pivot) {
            return false;
        }
        last_pivot = Some(r);
    }
    true
}

/// Rational `y` with `yᵀA` integral and `yᵀb` not an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub y: Vec<BigRational>,
}

impl Certificate {
    pub fn verify(&self, a: &IntegerMatrix, b: &[BigInt]) -> bool {
        if self.y.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        let integral_combination = (0..a.cols()).all(|j| {
            let s: BigRational = (0..a.rows())
                .map(|i| &self.y[i] * BigRational::from_integer(a.get(i, j).clone()))
                .sum();
            s.is_integer()
        });
        let yb: BigRational = self
            .y
            .iter()
            .zip(b)
            .map(|(yi, bi)| yi * BigRational::from_integer(bi.clone()))
            .sum();
        integral_combination && !yb.is_integer()
    }

    /// Entries as reduced `p/q` (or `p`) strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.y.iter().map(|v| v.to_string()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiophantineOutcome {
    Solution(Vec<BigInt>),
    Infeasible(Certificate),
}

/// Decides `A·x = b` over the integers.
pub fn solve_diophantine(a: &IntegerMatrix, b: &[BigInt]) -> Result<DiophantineOutcome> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let dec = hermite_decomposition(a);
    Ok(solve_with(&dec, b))
}

/// Forward substitution on `H·y = b`, then `x = U·y`.
pub fn solve_with(dec: &HermiteDecomposition, b: &[BigInt]) -> DiophantineOutcome {
    let h = &dec.h;
    let rank = dec.rank();
    let mut y = vec![BigInt::zero(); h.cols()];
    let mut next = 0;
    for i in 0..h.rows() {
        let residual = &b[i] - (0..next).map(|j| h.get(i, j) * &y[j]).sum::<BigInt>();
        if next < rank && dec.pivot_rows[next] == i {
            let (q, r) = residual.div_rem(h.get(i, next));
            if !r.is_zero() {
                return DiophantineOutcome::Infeasible(integrality_certificate(dec, next));
            }
            y[next] = q;
            next += 1;
        } else if !residual.is_zero() {
            return DiophantineOutcome::Infeasible(consistency_certificate(dec, i, next, &residual));
        }
    }
    let x = dec.u.mul_vec(&y).expect("U is cols × cols");
    DiophantineOutcome::Solution(x)
}

fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// `λ` with `Σ_a λ_a·H[pivot_a][c] = target[c]` for `c < t`, by back
/// substitution on the lower-triangular pivot block.
fn pivot_block_solve(dec: &HermiteDecomposition, t: usize, target: &[BigRational]) -> Vec<BigRational> {
    let h = &dec.h;
    let mut lambda = vec![BigRational::zero(); t];
    for c in (0..t).rev() {
        let mut acc = target[c].clone();
        for a in c + 1..t {
            acc -= &lambda[a] * rat(h.get(dec.pivot_rows[a], c));
        }
        lambda[c] = acc / rat(h.get(dec.pivot_rows[c], c));
    }
    lambda
}

/// Pivot `j` forced a non-integral coordinate: `yᵀH = e_j`, `yᵀb = y'_j`.
fn integrality_certificate(dec: &HermiteDecomposition, j: usize) -> Certificate {
    let mut target = vec![BigRational::zero(); j + 1];
    target[j] = BigRational::one();
    let lambda = pivot_block_solve(dec, j + 1, &target);
    let mut y = vec![BigRational::zero(); dec.h.rows()];
    for (a, l) in lambda.into_iter().enumerate() {
        y[dec.pivot_rows[a]] = l;
    }
    Certificate { y }
}

/// Row `i` is a rational combination of earlier pivot rows but `b_i` is
/// not the matching combination: `yᵀH = 0`, `yᵀb = 1/2`.
fn consistency_certificate(
    dec: &HermiteDecomposition,
    i: usize,
    t: usize,
    residual: &BigInt,
) -> Certificate {
    let target: Vec<BigRational> = (0..t).map(|c| rat(dec.h.get(i, c))).collect();
    let lambda = pivot_block_solve(dec, t, &target);
    let scale = BigRational::one() / (rat(residual) * BigRational::from_integer(2.into()));
    let mut y = vec![BigRational::zero(); dec.h.rows()];
    y[i] = scale.clone();
    for (a, l) in lambda.into_iter().enumerate() {
        y[dec.pivot_rows[a]] = -l * &scale;
    }
    Certificate { y }
}

pub(crate) fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or(Error::IntegerOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntegerMatrix) {
        let (h, u) = hermite_normal_form(a);
        assert_eq!(a.mul(&u).unwrap(), h, "A·U ≠ H for\n{a}");
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one(), "U not unimodular");
        assert!(is_hermite(&h), "not Hermite:\n{h}");
    }

    #[test]
    fn identity_is_fixed() {
        let i = IntegerMatrix::identity(4);
        let (h, u) = hermite_normal_form(&i);
        assert_eq!(h, i);
        assert_eq!(u, i);
    }

    #[test]
    fn gcd_step() {
        let a = m(&[&[2, 4]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[2, 0]]));
        check(&a);
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn reduces_left_entries() {
        let a = m(&[&[3, 0], &[7, 5]]);
        let (h, _) = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[3, 0], &[2, 5]]));
        check(&a);
    }

    #[test]
    fn hermite_checker_rejects_bad_forms() {
        assert!(!is_hermite(&m(&[&[-1, 0]])));
        assert!(!is_hermite(&m(&[&[0, 1]])));
        assert!(!is_hermite(&m(&[&[2, 0], &[2, 2]])));
        assert!(!is_hermite(&m(&[&[1, 1], &[0, 1]])));
        assert!(is_hermite(&m(&[&[1, 0], &[0, 0], &[5, 7]])));
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 1], &[7, 4]]).determinant().unwrap(), BigInt::from(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), BigInt::from(-1));
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).determinant().unwrap(),
            BigInt::from(6)
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), BigInt::zero());
    }

    #[test]
    fn solve_examples() {
        let a = m(&[&[2]]);
        assert_eq!(
            solve_diophantine(&a, &big(&[4])).unwrap(),
            DiophantineOutcome::Solution(big(&[2]))
        );
        let DiophantineOutcome::Infeasible(cert) = solve_diophantine(&a, &big(&[3])).unwrap() else {
            panic!("2x = 3 has no integer solution");
        };
        assert_eq!(cert.y, vec![BigRational::new(1.into(), 2.into())]);
        assert!(cert.verify(&a, &big(&[3])));
        assert!(solve_diophantine(&a, &big(&[1, 2])).is_err());
    }

    #[test]
    fn rational_inconsistency_is_certified() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let b = big(&[1, 3]);
        let DiophantineOutcome::Infeasible(cert) = solve_diophantine(&a, &b).unwrap() else {
            panic!("inconsistent system");
        };
        assert!(cert.verify(&a, &b));
        assert_eq!(cert.to_strings(), vec!["-1", "1/2"]);
    }

    #[test]
    fn zero_matrix() {
        let a = IntegerMatrix::zeros(2, 3);
        assert_eq!(
            solve_diophantine(&a, &big(&[0, 0])).unwrap(),
            DiophantineOutcome::Solution(big(&[0, 0, 0]))
        );
        let DiophantineOutcome::Infeasible(cert) = solve_diophantine(&a, &big(&[0, 5])).unwrap() else {
            panic!();
        };
        assert!(cert.verify(&a, &big(&[0, 5])));
    }

    fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..=6, 1usize..=9).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                IntegerMatrix::from_i64_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn hnf_invariants(a in matrix_strategy()) {
            check(&a);
        }

        #[test]
        fn outcomes_verify(a in matrix_strategy(), seed in prop::collection::vec(-5i64..=5, 9)) {
            let b: Vec<BigInt> = (0..a.rows()).map(|i| BigInt::from(seed[i] * 3 - 1)).collect();
            match solve_diophantine(&a, &b).unwrap() {
                DiophantineOutcome::Solution(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
                DiophantineOutcome::Infeasible(cert) => prop_assert!(cert.verify(&a, &b)),
            }
        }
    }
}
