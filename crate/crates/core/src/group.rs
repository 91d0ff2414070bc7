//! Finite Abelian groups given as direct sums of cyclic factors.
//!
//! Elements are encoded by their mixed-radix index with the first factor
//! most significant, so `Z_2 ⊕ Z_2` lists `(0,0), (0,1), (1,0), (1,1)` as
//! `0, 1, 2, 3`. The factor list is kept exactly as given.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::latin::{classify, LatinSquare, PartialWeightClass, WeightMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement(usize);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroupSpec("empty factor list".into()));
        }
        if factors.contains(&0) {
            return Err(Error::InvalidGroupSpec("factors must be at least 1".into()));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or(Error::IntegerOverflow)?;
        Ok(AbelianGroup { factors, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(GroupElement(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    fn check(&self, g: GroupElement) -> Result<()> {
        self.element(g.0).map(|_| ())
    }

    /// Mixed-radix digits of `g`, first factor first.
    pub fn to_tuple(&self, g: GroupElement) -> Vec<usize> {
        let mut rest = g.0;
        let mut digits = vec![0; self.factors.len()];
        for (d, &m) in digits.iter_mut().zip(&self.factors).rev() {
            *d = rest % m;
            rest /= m;
        }
        digits
    }

    pub fn from_tuple(&self, digits: &[usize]) -> Result<GroupElement> {
        if digits.len() != self.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} digits, got {}",
                self.factors.len(),
                digits.len()
            )));
        }
        let mut index = 0;
        for (&d, &m) in digits.iter().zip(&self.factors) {
            if d >= m {
                return Err(Error::InvalidArgument(format!("digit {d} not below {m}")));
            }
            index = index * m + d;
        }
        Ok(GroupElement(index))
    }

    fn combine(&self, a: usize, b: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &m in self.factors.iter().rev() {
            out += op(a % m, b % m, m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out
    }

    fn add_raw(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement(self.combine(a.0, b.0, |x, y, m| (x + y) % m))
    }

    fn sub_raw(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement(self.combine(a.0, b.0, |x, y, m| (x + m - y) % m))
    }

    pub fn add(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_raw(a, b))
    }

    pub fn neg(&self, a: GroupElement) -> Result<GroupElement> {
        self.sub(GroupElement::IDENTITY, a)
    }

    /// `k·g` by repeated doubling; negative `k` goes through `-g`.
    pub fn scalar_mul(&self, k: i64, g: GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let mut base = if k < 0 {
            self.sub_raw(GroupElement::IDENTITY, g)
        } else {
            g
        };
        let mut k = k.unsigned_abs();
        let mut acc = GroupElement::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_raw(acc, base);
            }
            base = self.add_raw(base, base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// The sum of all group elements.
    pub fn element_sum(&self) -> GroupElement {
        self.elements()
            .fold(GroupElement::IDENTITY, |acc, g| self.add_raw(acc, g))
    }

    /// `Some(u)` when exactly one non-identity element satisfies `u + u = 0`.
    pub fn unique_involution(&self) -> Option<GroupElement> {
        let mut found = None;
        for g in self.elements().skip(1) {
            if self.add_raw(g, g) == GroupElement::IDENTITY {
                if found.is_some() {
                    return None;
                }
                found = Some(g);
            }
        }
        found
    }

    /// `grid[x][y]` is the index of `x + y`.
    pub fn cayley_table(&self) -> LatinSquare {
        let n = self.order;
        let grid = (0..n * n)
            .map(|i| self.add_raw(GroupElement(i / n), GroupElement(i % n)).0)
            .collect();
        LatinSquare::from_flat_unchecked(n, grid)
    }

    fn sum_of(&self, indices: &[usize]) -> GroupElement {
        indices
            .iter()
            .fold(GroupElement::IDENTITY, |acc, &i| self.add_raw(acc, GroupElement(i)))
    }

    fn weighted_sum(&self, scalars: &[i64]) -> GroupElement {
        scalars
            .iter()
            .enumerate()
            .fold(GroupElement::IDENTITY, |acc, (i, &s)| {
                let term = self
                    .scalar_mul(s, GroupElement(i))
                    .expect("index below order");
                self.add_raw(acc, term)
            })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [n] = self.factors[..] {
            return write!(f, "cyclic:{n}");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| m.to_string()).collect();
        write!(f, "sum:{}", parts.join(","))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Accepts `cyclic:N` or `sum:M1,M2,...` with every factor at least 1.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroupSpec(s.to_string());
        let parse_factor = |t: &str| -> Result<usize> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let m: usize = t.parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            Ok(m)
        };
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let factors = match kind {
            "cyclic" => vec![parse_factor(rest)?],
            "sum" => rest
                .split(',')
                .map(parse_factor)
                .collect::<Result<Vec<_>>>()?,
            _ => return Err(bad()),
        };
        AbelianGroup::new(factors)
    }
}

/// One representative per isomorphism class of Abelian groups of order `n`,
/// in invariant-factor form `m_1 | m_2 | ... | m_t` (each `m_i ≥ 2`), and
/// `[1]` for the trivial group.
pub fn abelian_groups_of_order(n: usize) -> Vec<AbelianGroup> {
    fn go(remaining: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(acc.clone());
            return;
        }
        for m in 2..=remaining {
            if remaining % m == 0 && m % last == 0 {
                acc.push(m);
                go(remaining / m, m, acc, out);
                acc.pop();
            }
        }
    }
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![AbelianGroup::cyclic(1).expect("trivial group")];
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    // `go` only emits chains whose product is exactly n.
    let mut groups: Vec<AbelianGroup> = out
        .into_iter()
        .map(|f| AbelianGroup::new(f).expect("valid factors"))
        .collect();
    groups.sort_by(|a, b| a.factors.len().cmp(&b.factors.len()).then(a.factors.cmp(&b.factors)));
    groups
}

/// `Σ_z S_z·z − Σ_x R_x·x − Σ_y C_y·y` for the sum profile of `weight`
/// against the Cayley table. Every cell has `z − x − y = 0`, so this is
/// always the identity.
pub fn group_sum_identity(group: &AbelianGroup, weight: &WeightMatrix) -> Result<GroupElement> {
    let table = group.cayley_table();
    let profile = crate::latin::sum_profile(&table, weight)?;
    let symbols = group.weighted_sum(&profile.symbol_sums);
    let rows = group.weighted_sum(&profile.row_sums);
    let cols = group.weighted_sum(&profile.col_sums);
    Ok(group.sub_raw(group.sub_raw(symbols, rows), cols))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma22Report {
    pub delta: GroupElement,
    pub expected: GroupElement,
    pub matches: bool,
}

/// For a partial k-weight on the Cayley table, compares `k(s − r − c)`
/// (with `r`, `c`, `s` the sums of the missing rows, columns and symbols)
/// against the sum of all group elements when `k` is odd and the involution is unique,
/// and against the identity otherwise.
pub fn lemma22_check(group: &AbelianGroup, weight: &WeightMatrix, k: i64) -> Result<Lemma22Report> {
    let table = group.cayley_table();
    let (rows, cols, symbols) = match classify(&table, weight, k)? {
        PartialWeightClass::Exact { .. } => (vec![], vec![], vec![]),
        PartialWeightClass::Partial {
            missing_rows,
            missing_cols,
            missing_symbols,
            ..
        } => (missing_rows, missing_cols, missing_symbols),
        PartialWeightClass::Unclassified => return Err(Error::NotAPartialWeight { k }),
    };
    let r = group.sum_of(&rows);
    let c = group.sum_of(&cols);
    let s = group.sum_of(&symbols);
    let delta = group.scalar_mul(k, group.sub_raw(group.sub_raw(s, r), c))?;
    let expected = if k % 2 != 0 && group.unique_involution().is_some() {
        group.element_sum()
    } else {
        GroupElement::IDENTITY
    };
    Ok(Lemma22Report {
        delta,
        expected,
        matches: delta == expected,
    })
}

/// True iff `i·(g − h) ≠ 0`: then no weight with unit row and column sums
/// can have symbol sums `i` at `g`, `|G| − i` at `h` and zero elsewhere.
/// This answers the algebraic obstruction only; when it vanishes nothing is
/// claimed about realizability.
pub fn profile_excluded(group: &AbelianGroup, g: GroupElement, h: GroupElement, i: i64) -> Result<bool> {
    group.check(g)?;
    group.check(h)?;
    if i <= 0 || i as u64 >= group.order as u64 {
        return Err(Error::IOutOfRange {
            i,
            order: group.order,
        });
    }
    Ok(group.scalar_mul(i, group.sub_raw(g, h))? != GroupElement::IDENTITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn addition() {
        let z4 = g("cyclic:4");
        assert_eq!(
            z4.add(GroupElement(1), GroupElement(3)).unwrap(),
            GroupElement(0)
        );
        let klein = g("sum:2,2");
        let a = klein.from_tuple(&[1, 0]).unwrap();
        let b = klein.from_tuple(&[1, 1]).unwrap();
        let sum = klein.add(a, b).unwrap();
        assert_eq!(klein.to_tuple(sum), vec![0, 1]);
        for x in klein.elements() {
            assert_eq!(klein.add(x, klein.identity()).unwrap(), x);
        }
        assert_eq!(
            z4.add(GroupElement(4), GroupElement(0)),
            Err(Error::ElementOutOfRange { index: 4, order: 4 })
        );
    }

    #[test]
    fn paige_sums() {
        assert_eq!(g("cyclic:4").element_sum(), GroupElement(2));
        assert_eq!(g("sum:2,2").element_sum(), GroupElement(0));
        assert_eq!(g("cyclic:5").element_sum(), GroupElement(0));
    }

    #[test]
    fn involutions() {
        assert_eq!(g("cyclic:4").unique_involution(), Some(GroupElement(2)));
        assert_eq!(g("sum:2,2").unique_involution(), None);
        assert_eq!(g("cyclic:9").unique_involution(), None);
        assert_eq!(g("cyclic:1").unique_involution(), None);
        for m in 1..10 {
            assert_eq!(
                AbelianGroup::cyclic(2 * m).unwrap().unique_involution(),
                Some(GroupElement(m))
            );
        }
    }

    #[test]
    fn paige_lemma_for_small_groups() {
        for n in 1..=16 {
            for grp in abelian_groups_of_order(n) {
                let expected = grp.unique_involution().unwrap_or(GroupElement::IDENTITY);
                assert_eq!(grp.element_sum(), expected, "{grp}");
                if n % 2 == 1 {
                    assert_eq!(grp.unique_involution(), None);
                }
            }
        }
    }

    #[test]
    fn non_canonical_factor_lists_are_kept() {
        let grp = g("sum:4,2");
        assert_eq!(grp.factors(), &[4, 2]);
        assert_eq!(grp.unique_involution(), None);
        assert_eq!(grp.element_sum(), GroupElement(0));
    }

    #[test]
    fn cayley_tables() {
        assert_eq!(g("cyclic:2").cayley_table().to_string(), "0 1\n1 0\n");
        assert_eq!(
            g("cyclic:3").cayley_table().to_string(),
            "0 1 2\n1 2 0\n2 0 1\n"
        );
        assert_eq!(
            g("sum:2,2").cayley_table().to_string(),
            "0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n"
        );
    }

    #[test]
    fn abelian_group_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(
            counts,
            vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]
        );
        let eight: Vec<String> = abelian_groups_of_order(8).iter().map(|g| g.to_string()).collect();
        assert_eq!(eight, vec!["cyclic:8", "sum:2,4", "sum:2,2,2"]);
    }

    #[test]
    fn scalar_mul_handles_signs() {
        let z7 = g("cyclic:7");
        assert_eq!(z7.scalar_mul(-1, GroupElement(3)).unwrap(), GroupElement(4));
        assert_eq!(z7.scalar_mul(10, GroupElement(3)).unwrap(), GroupElement(2));
        assert_eq!(
            z7.scalar_mul(i64::MIN, GroupElement(1)).unwrap(),
            GroupElement(((7 - (i64::MIN.unsigned_abs() % 7)) % 7) as usize)
        );
    }

    #[test]
    fn spec_strings() {
        assert_eq!(g("cyclic:5").factors(), &[5]);
        assert_eq!(g("sum:2,4").factors(), &[2, 4]);
        assert_eq!(g("sum:2,4").to_string(), "sum:2,4");
        for bad in ["", "cyclic", "cyclic:", "cyclic:0", "sum:2,,3", "sum:", "cyclic:-3", "dihedral:4", "cyclic: 3", "sum:2,x"] {
            assert!(bad.parse::<AbelianGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn identity_is_forced() {
        let z5 = g("cyclic:5");
        let w = WeightMatrix::from_flat(5, (0..25).map(|i| i * 7 - 40).collect()).unwrap();
        assert_eq!(group_sum_identity(&z5, &w).unwrap(), GroupElement(0));
        let z4 = g("cyclic:4");
        assert_eq!(
            group_sum_identity(&z4, &WeightMatrix::filled(4, 1)).unwrap(),
            GroupElement(0)
        );
        assert!(group_sum_identity(&z4, &WeightMatrix::zeros(3)).is_err());
    }

    #[test]
    fn lemma22_examples() {
        let z4 = g("cyclic:4");
        let near = WeightMatrix::indicator(4, &[(0, 0), (1, 1), (2, 3)]);
        let rep = lemma22_check(&z4, &near, 1).unwrap();
        assert_eq!(rep.delta, GroupElement(2));
        assert_eq!(rep.expected, GroupElement(2));
        assert!(rep.matches);

        let z3 = g("cyclic:3");
        let near = WeightMatrix::indicator(3, &[(0, 0), (1, 1)]);
        let rep = lemma22_check(&z3, &near, 1).unwrap();
        assert_eq!((rep.delta, rep.expected, rep.matches), (GroupElement(0), GroupElement(0), true));

        let rep = lemma22_check(&z4, &WeightMatrix::filled(4, 1), 4).unwrap();
        assert_eq!((rep.delta, rep.expected, rep.matches), (GroupElement(0), GroupElement(0), true));

        assert_eq!(
            lemma22_check(&z4, &WeightMatrix::filled(4, 1), 1),
            Err(Error::NotAPartialWeight { k: 1 })
        );
    }

    #[test]
    fn excluded_profiles() {
        let z5 = g("cyclic:5");
        assert!(profile_excluded(&z5, GroupElement(1), GroupElement(3), 2).unwrap());
        let z4 = g("cyclic:4");
        assert!(!profile_excluded(&z4, GroupElement(3), GroupElement(1), 2).unwrap());
        for i in 1..4 {
            assert!(!profile_excluded(&z4, GroupElement(2), GroupElement(2), i).unwrap());
        }
        assert!(matches!(
            profile_excluded(&z4, GroupElement(0), GroupElement(1), 4),
            Err(Error::IOutOfRange { .. })
        ));
        assert!(matches!(
            profile_excluded(&z4, GroupElement(0), GroupElement(1), 0),
            Err(Error::IOutOfRange { .. })
        ));
        assert!(matches!(
            profile_excluded(&z4, GroupElement(9), GroupElement(1), 1),
            Err(Error::ElementOutOfRange { .. })
        ));
    }
}
