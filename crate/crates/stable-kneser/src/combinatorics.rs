//! Subsets of `[n] = {1, ..., n}` as 64-bit masks, subset enumeration, and
//! the uniform and vector stability predicates.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

/// A subset of `[n]` stored as a bitmask: element `i` is bit `i - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KSubset {
    mask: u64,
}

impl KSubset {
    /// Builds a subset of `[n]` from its elements (any order, no duplicates).
    pub fn new(n: u32, elements: &[u32]) -> Result<Self> {
        check_ground(n)?;
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return arg(format!("element {e} outside [1, {n}]"));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return arg(format!("duplicate element {e}"));
            }
            mask |= bit;
        }
        Ok(Self { mask })
    }

    pub const fn from_mask(mask: u64) -> Self {
        Self { mask }
    }

    pub const fn mask(self) -> u64 {
        self.mask
    }

    pub const fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub const fn contains(self, e: u32) -> bool {
        e >= 1 && e <= 64 && self.mask >> (e - 1) & 1 == 1
    }

    pub const fn is_disjoint(self, other: KSubset) -> bool {
        self.mask & other.mask == 0
    }

    /// Smallest element, if any.
    pub fn min(self) -> Option<u32> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() + 1)
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<u32> {
        (self.mask != 0).then(|| 64 - self.mask.leading_zeros())
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let e = m.trailing_zeros() + 1;
            m &= m - 1;
            Some(e)
        })
    }

    pub fn elements(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted element lists.
    pub fn lex_cmp(self, other: KSubset) -> Ordering {
        let diff = self.mask ^ other.mask;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let mine = self.mask & low != 0;
        // The first differing position: whoever holds the smaller element
        // there is smaller, unless the other list has already ended.
        let below = low - 1;
        let ended = |m: u64| m & !below == 0;
        match (mine, ended(self.mask), ended(other.mask)) {
            (true, _, true) => Ordering::Greater,
            (true, _, false) => Ordering::Less,
            (false, true, _) => Ordering::Less,
            (false, false, _) => Ordering::Greater,
        }
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// The vector `(s_1, ..., s_k)` of minimum gaps; the last entry bounds the
/// wraparound distance.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StabilityVector(Vec<u32>);

impl StabilityVector {
    pub fn new(s: Vec<u32>) -> Result<Self> {
        if s.is_empty() {
            return arg("stability vector must have at least one entry");
        }
        if s.iter().any(|&x| x == 0) {
            return arg("stability vector entries must be positive");
        }
        Ok(Self(s))
    }

    /// The constant vector `(s, ..., s)` of length `k`.
    pub fn uniform(s: u32, k: usize) -> Result<Self> {
        Self::new(vec![s; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `s_1 + ... + s_{k-1}`.
    pub fn sum_head(&self) -> u32 {
        self.0[..self.0.len() - 1].iter().sum()
    }

    /// `min(s_1, ..., s_{k-1})`, or `None` when `k = 1`.
    pub fn min_head(&self) -> Option<u32> {
        self.0[..self.0.len() - 1].iter().copied().min()
    }

    pub fn is_uniform(&self) -> bool {
        self.0.iter().all(|&x| x == self.0[0])
    }
}

impl TryFrom<Vec<u32>> for StabilityVector {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<StabilityVector> for Vec<u32> {
    fn from(s: StabilityVector) -> Self {
        s.0
    }
}

impl fmt::Display for StabilityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::Capacity(format!("ground set size {n} exceeds {MAX_GROUND}")));
    }
    Ok(())
}

/// Lexicographic stream of the `k`-subsets of `[n]`.
#[derive(Clone, Debug)]
pub struct KSubsets {
    n: u32,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for KSubsets {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        if self.done {
            return None;
        }
        let out = KSubset::from_mask(self.current.iter().fold(0, |m, &e| m | 1 << (e - 1)));
        let k = self.current.len() as u32;
        // Advance the rightmost position that can still move.
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (k - 1 - i as u32) {
                self.current[i] += 1;
                for j in i + 1..self.current.len() {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All `k`-subsets of `[n]` in lexicographic order of their sorted elements.
/// `k > n` yields nothing.
pub fn enumerate_k_subsets(n: u32, k: u32) -> Result<KSubsets> {
    check_ground(n)?;
    Ok(KSubsets {
        n,
        current: (1..=k).collect(),
        done: k > n,
    })
}

/// `s <= |i - j| <= n - s` for every pair of distinct elements.
pub fn is_s_stable(a: KSubset, n: u32, s: u32) -> bool {
    let mut prev = None;
    for e in a.iter() {
        if let Some(p) = prev {
            if e - p < s {
                return false;
            }
        }
        prev = Some(e);
    }
    match (a.min(), a.max()) {
        (Some(lo), Some(hi)) if lo != hi => hi - lo + s <= n,
        _ => true,
    }
}

/// `A(j+1) - A(j) >= s_j` for `j < k`, and `A(k) - A(1) <= n - s_k`.
pub fn is_vec_stable(a: KSubset, n: u32, svec: &StabilityVector) -> Result<bool> {
    if a.len() != svec.k() {
        return arg(format!(
            "subset has {} elements but stability vector has {}",
            a.len(),
            svec.k()
        ));
    }
    Ok(vec_stable_unchecked(a, n, svec.as_slice()))
}

pub(crate) fn vec_stable_unchecked(a: KSubset, n: u32, s: &[u32]) -> bool {
    let mut first = None;
    let mut prev = 0;
    for (j, e) in a.iter().enumerate() {
        match first {
            None => first = Some(e),
            Some(_) => {
                if e - prev < s[j - 1] {
                    return false;
                }
            }
        }
        prev = e;
    }
    let lo = first.unwrap_or(0);
    (prev - lo) as u64 + s[s.len() - 1] as u64 <= n as u64
}

/// True iff no element is shared by two of the sets.
pub fn are_pairwise_disjoint(sets: &[KSubset]) -> bool {
    let mut seen = 0u64;
    for s in sets {
        if seen & s.mask() != 0 {
            return false;
        }
        seen |= s.mask();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn enumerates_small_cases_in_order() {
        let all: Vec<Vec<u32>> = enumerate_k_subsets(3, 2).unwrap().map(|a| a.elements()).collect();
        assert_eq!(all, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(enumerate_k_subsets(5, 2).unwrap().count(), 10);
        assert_eq!(enumerate_k_subsets(14, 2).unwrap().count(), 91);
        assert_eq!(enumerate_k_subsets(4, 0).unwrap().count(), 1);
        assert_eq!(enumerate_k_subsets(3, 4).unwrap().count(), 0);
        assert_eq!(enumerate_k_subsets(64, 1).unwrap().count(), 64);
        assert!(matches!(enumerate_k_subsets(65, 2), Err(Error::Capacity(_))));
    }

    #[test]
    fn counts_match_binomials_and_order_is_strict() {
        for n in 0..=12u32 {
            for k in 0..=n {
                let v: Vec<KSubset> = enumerate_k_subsets(n, k).unwrap().collect();
                assert_eq!(v.len() as u64, binomial(n as u64, k as u64));
                for w in v.windows(2) {
                    assert_eq!(w[0].lex_cmp(w[1]), Ordering::Less);
                    assert!(w[0].elements() < w[1].elements());
                }
            }
        }
    }

    #[test]
    fn lex_cmp_matches_vector_order_on_mixed_sizes() {
        let subsets: Vec<KSubset> = (0u64..1 << 6).map(KSubset::from_mask).collect();
        for &a in &subsets {
            for &b in &subsets {
                assert_eq!(a.lex_cmp(b), a.elements().cmp(&b.elements()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn rejects_bad_elements() {
        assert!(KSubset::new(5, &[0]).is_err());
        assert!(KSubset::new(5, &[6]).is_err());
        assert!(KSubset::new(5, &[2, 2]).is_err());
        assert_eq!(set(64, &[64]).max(), Some(64));
    }

    #[test]
    fn uniform_stability_examples() {
        // |1 - 5| = 4 = 6 - 2, so {1,3,5} is a vertex of SG(6,3); {1,3,6} is not.
        assert!(is_s_stable(set(6, &[1, 3, 5]), 6, 2));
        assert!(!is_s_stable(set(6, &[1, 3, 6]), 6, 2));
        assert!(is_s_stable(set(5, &[1, 3]), 5, 2));
        assert!(is_s_stable(set(9, &[4]), 9, 7));
        assert!(is_s_stable(KSubset::default(), 9, 7));
    }

    #[test]
    fn vector_stability_examples() {
        let s = StabilityVector::new(vec![1, 4]).unwrap();
        assert!(is_vec_stable(set(6, &[1, 3]), 6, &s).unwrap());
        assert!(!is_vec_stable(set(6, &[1, 6]), 6, &s).unwrap());
        assert!(is_vec_stable(set(6, &[1, 2, 3]), 6, &s).is_err());
        let one = StabilityVector::new(vec![5]).unwrap();
        assert!(is_vec_stable(set(6, &[2]), 6, &one).unwrap());
        assert!(!is_vec_stable(set(4, &[2]), 4, &one).unwrap());
    }

    #[test]
    fn constant_vector_agrees_with_uniform_stability() {
        for n in 1..=10u32 {
            for k in 2..=3u32 {
                for s in 1..=3u32 {
                    let sv = StabilityVector::uniform(s, k as usize).unwrap();
                    for a in enumerate_k_subsets(n, k).unwrap() {
                        assert_eq!(is_vec_stable(a, n, &sv).unwrap(), is_s_stable(a, n, s), "{a} n={n} s={s}");
                    }
                }
            }
        }
        let sv = StabilityVector::uniform(2, 3).unwrap();
        for a in enumerate_k_subsets(8, 3).unwrap() {
            assert_eq!(is_vec_stable(a, 8, &sv).unwrap(), is_s_stable(a, 8, 2));
        }
    }

    #[test]
    fn stable_counts_match_definition_filter() {
        for n in 1..=12u32 {
            for k in 1..=4u32 {
                for s in 1..=4u32 {
                    let by_def = enumerate_k_subsets(n, k)
                        .unwrap()
                        .filter(|a| {
                            let e = a.elements();
                            e.iter().all(|&i| {
                                e.iter().all(|&j| i == j || (i.abs_diff(j) >= s && i.abs_diff(j) <= n.saturating_sub(s)))
                            })
                        })
                        .count();
                    let ours = enumerate_k_subsets(n, k).unwrap().filter(|&a| is_s_stable(a, n, s)).count();
                    assert_eq!(ours, by_def, "n={n} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn two_subset_count_identity() {
        for s in 1..=6u32 {
            for n in 2 * s..=20 {
                let count = enumerate_k_subsets(n, 2).unwrap().filter(|&a| is_s_stable(a, n, s)).count() as u32;
                assert_eq!(count, n * (n - 2 * s + 1) / 2, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn disjointness() {
        let sets = [set(6, &[1, 2]), set(6, &[3, 4]), set(6, &[5, 6])];
        assert!(are_pairwise_disjoint(&sets));
        assert!(!are_pairwise_disjoint(&[set(3, &[1, 2]), set(3, &[2, 3])]));
        assert!(are_pairwise_disjoint(&[]));
    }

    #[test]
    fn stability_vector_validation() {
        assert!(StabilityVector::new(vec![]).is_err());
        assert!(StabilityVector::new(vec![2, 0]).is_err());
        let s = StabilityVector::new(vec![3, 2, 4]).unwrap();
        assert_eq!((s.sum(), s.sum_head(), s.min_head(), s.last()), (9, 5, Some(2), 4));
        assert_eq!(StabilityVector::new(vec![3]).unwrap().min_head(), None);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[3,2,4]");
        assert!(serde_json::from_str::<StabilityVector>("[1,0]").is_err());
    }
}
