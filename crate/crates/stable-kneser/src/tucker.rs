//! Signed sets, alternating subsets and the two-case Tucker labeling built
//! from a coloring of `KG^2(n,k)_s`, with an exhaustive check of the two
//! conditions of Tucker's lemma.
//!
//! Two label schemes are provided. `Published` uses the alternating length
//! up to `alpha = sum(s)` and `alpha + color` above it; since the `s_k`
//! disjoint sets only force the minimum color down to `t - s_k + 1`, its
//! labels can reach `t + sum(s_1..s_{k-1}) + 1`. `ShiftedThreshold` switches
//! one step earlier (alternating length up to `alpha - 1`, then
//! `alpha - 1 + color`), which keeps every label within
//! `m = t + sum(s_1..s_{k-1})`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{validate_coloring, Coloring};
use crate::combinatorics::{vec_stable_unchecked, KSubset, StabilityVector, MAX_GROUND};
use crate::error::{arg, Error, Result};
use crate::hypergraph::{build_stable_kneser, Hypergraph};

/// Largest ground set accepted by the exhaustive checker.
pub const VERIFY_CAP: u32 = 10;

/// A vector in `{-1, 0, +1}^n`, stored as the masks of its positive and
/// negative coordinates (bit `i-1` for coordinate `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedSet {
    n: u32,
    plus: u64,
    minus: u64,
}

impl SignedSet {
    pub fn new(signs: &[i8]) -> Result<SignedSet> {
        if signs.len() > MAX_GROUND as usize {
            return Err(Error::Capacity(format!("{} coordinates exceed {MAX_GROUND}", signs.len())));
        }
        let mut s = SignedSet { n: signs.len() as u32, plus: 0, minus: 0 };
        for (i, &x) in signs.iter().enumerate() {
            match x {
                1 => s.plus |= 1 << i,
                -1 => s.minus |= 1 << i,
                0 => {}
                _ => return arg(format!("sign {x} at coordinate {} is not -1, 0 or 1", i + 1)),
            }
        }
        Ok(s)
    }

    pub fn from_masks(n: u32, plus: u64, minus: u64) -> Result<SignedSet> {
        if n > MAX_GROUND {
            return Err(Error::Capacity(format!("n = {n} exceeds {MAX_GROUND}")));
        }
        let ground = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if plus & minus != 0 || (plus | minus) & !ground != 0 {
            return arg("positive and negative parts must be disjoint subsets of [n]");
        }
        Ok(SignedSet { n, plus, minus })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn plus(&self) -> u64 {
        self.plus
    }

    pub fn minus(&self) -> u64 {
        self.minus
    }

    pub fn support(&self) -> u64 {
        self.plus | self.minus
    }

    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    /// Sign of coordinate `i` (1-based).
    pub fn sign(&self, i: u32) -> i8 {
        let b = 1u64 << (i - 1);
        if self.plus & b != 0 {
            1
        } else if self.minus & b != 0 {
            -1
        } else {
            0
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (1..=self.n).map(|i| self.sign(i)).collect()
    }

    pub fn negated(&self) -> SignedSet {
        SignedSet { n: self.n, plus: self.minus, minus: self.plus }
    }

    /// `self ⪯ other`: every nonzero coordinate of `self` agrees with `other`.
    pub fn precedes(&self, other: &SignedSet) -> bool {
        self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }
}

impl fmt::Debug for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            f.write_str(match self.sign(i) {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl Serialize for SignedSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.signs().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SignedSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i8>::deserialize(de)?;
        SignedSet::new(&v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltResult {
    /// Increasing 1-based coordinates of the chosen alternating subset.
    pub chosen: Vec<u32>,
    pub length: usize,
    /// Sign of the first nonzero coordinate of the whole vector.
    pub sign: i8,
}

/// Longest alternating subset of the support; the greedy scan takes the
/// first coordinate of every sign run, which is also the lexicographically
/// smallest among the longest ones.
pub fn alt_set(a: &SignedSet) -> Result<AltResult> {
    if a.is_zero() {
        return arg("alternating subset of the zero vector");
    }
    let mut chosen = Vec::new();
    let mut last = 0i8;
    for i in 1..=a.n {
        let s = a.sign(i);
        if s != 0 && s != last {
            chosen.push(i);
            last = s;
        }
    }
    let sign = a.sign(chosen[0]);
    Ok(AltResult { length: chosen.len(), chosen, sign })
}

fn check_lambda_vector(svec: &StabilityVector) -> Result<()> {
    let s = svec.as_slice();
    let head = &s[..s.len() - 1];
    if let Some(i) = head.iter().position(|x| x % 2 != 0) {
        return arg(format!("s_{} = {} is odd; the construction needs every s_i with i < k even", i + 1, head[i]));
    }
    if let Some(m) = svec.min_head() {
        if svec.last() > m {
            return arg(format!("s_k = {} exceeds min(s_1..s_(k-1)) = {m}; the sets would overlap", svec.last()));
        }
    }
    Ok(())
}

/// The `s_k` sets `F_j = {i_j, i_(j+s_1), i_(j+s_1+s_2), ...}` over the
/// chosen alternating coordinates. Requires `|Alt(A)| > sum(s)`, every
/// `s_i` (`i < k`) even and `s_k <= min(s_1..s_(k-1))`.
pub fn f_sets(a: &SignedSet, svec: &StabilityVector) -> Result<Vec<KSubset>> {
    check_lambda_vector(svec)?;
    let alt = alt_set(a)?;
    if alt.length <= svec.sum() as usize {
        return arg(format!("alternating length {} does not exceed sum(s) = {}", alt.length, svec.sum()));
    }
    Ok(f_sets_from(&alt, svec))
}

/// Needs `alt.length >= sum(s)`.
fn f_sets_from(alt: &AltResult, svec: &StabilityVector) -> Vec<KSubset> {
    let s = svec.as_slice();
    (0..svec.last() as usize)
        .map(|j| {
            let mut pos = j;
            let mut mask = 1u64 << (alt.chosen[pos] - 1);
            for &step in &s[..s.len() - 1] {
                pos += step as usize;
                mask |= 1u64 << (alt.chosen[pos] - 1);
            }
            KSubset::from_mask(mask)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelScheme {
    /// Alternating length up to `alpha`, then `alpha + color`.
    #[default]
    Published,
    /// Alternating length up to `alpha - 1`, then `alpha - 1 + color`.
    ShiftedThreshold,
}

impl LabelScheme {
    /// Largest alternating length labeled by its own value.
    fn threshold(self, alpha: u32) -> u32 {
        match self {
            LabelScheme::Published => alpha,
            LabelScheme::ShiftedThreshold => alpha - 1,
        }
    }
}

/// The labeling `lambda` for a fixed coloring of `KG^2(n,k)_s`.
#[derive(Clone, Debug)]
pub struct LabelFunction {
    graph: Hypergraph,
    coloring: Coloring,
    scheme: LabelScheme,
    alpha: u32,
    palette: u32,
    range_m: u32,
}

/// `lambda` with the published thresholds.
pub fn build_lambda(n: u32, svec: &StabilityVector, c: &Coloring) -> Result<LabelFunction> {
    build_lambda_with(n, svec, c, LabelScheme::Published)
}

/// The coloring is not checked for properness; an improper one yields a
/// labeling that the verifier is expected to reject.
pub fn build_lambda_with(n: u32, svec: &StabilityVector, c: &Coloring, scheme: LabelScheme) -> Result<LabelFunction> {
    check_lambda_vector(svec)?;
    let graph = build_stable_kneser(n, svec.k() as u32, 2, svec)?;
    if c.len() != graph.vertex_count() {
        return arg(format!("coloring has {} entries for {} vertices", c.len(), graph.vertex_count()));
    }
    let palette = c.assignment().iter().copied().max().unwrap_or(0);
    Ok(LabelFunction {
        alpha: svec.sum(),
        range_m: palette + svec.sum_head(),
        palette,
        scheme,
        coloring: c.clone(),
        graph,
    })
}

impl LabelFunction {
    pub fn n(&self) -> u32 {
        self.graph.n()
    }

    pub fn svec(&self) -> &StabilityVector {
        self.graph.svec()
    }

    pub fn scheme(&self) -> LabelScheme {
        self.scheme
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// Largest color value of the coloring.
    pub fn palette(&self) -> u32 {
        self.palette
    }

    /// `t + sum(s_1..s_(k-1))`.
    pub fn range_m(&self) -> u32 {
        self.range_m
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// Signed label of a nonzero signed set.
    pub fn evaluate(&self, a: &SignedSet) -> Result<i32> {
        if a.n != self.n() {
            return arg(format!("signed set has {} coordinates, expected {}", a.n, self.n()));
        }
        let alt = alt_set(a)?;
        let threshold = self.scheme.threshold(self.alpha);
        if alt.length as u32 <= threshold {
            return Ok(alt.sign as i32 * alt.length as i32);
        }
        let mut best: Option<(u32, KSubset)> = None;
        for f in f_sets_from(&alt, self.svec()) {
            let id = self.graph.index_of(f).ok_or_else(|| {
                Error::InternalContract(format!("F = {f} is not a vertex of KG({}, {})", self.n(), self.svec()))
            })?;
            let c = self.coloring.color(id);
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, f));
            }
        }
        let (c, f) = best.expect("s_k >= 1 sets");
        let sign = if f.mask() & a.plus == f.mask() {
            1
        } else if f.mask() & a.minus == f.mask() {
            -1
        } else {
            return Err(Error::InternalContract(format!("F = {f} is not sign-pure in {a}")));
        };
        Ok(sign * (threshold + c) as i32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntipodalViolation {
    pub set: SignedSet,
    pub label: i32,
    pub negated_label: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneViolation {
    pub smaller: SignedSet,
    pub larger: SignedSet,
    pub smaller_label: i32,
    pub larger_label: i32,
}

/// Result of the exhaustive check. Violation lists keep the first
/// `WITNESS_CAP` witnesses; the counts are complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuckerReport {
    pub n: u32,
    pub svec: StabilityVector,
    pub palette: u32,
    pub scheme: LabelScheme,
    pub coloring_proper: bool,
    pub range_m: u32,
    pub max_abs_label: u32,
    pub range_ok: bool,
    pub condition1_violations: Vec<AntipodalViolation>,
    pub condition1_violation_count: u64,
    pub condition2_violations: Vec<MonotoneViolation>,
    pub condition2_violation_count: u64,
    pub pairs_checked: u64,
    /// Lower bound on the palette certified by the labeling, present when
    /// both conditions hold and the labels stay in the scheme's range.
    pub bound: Option<u32>,
}

impl TuckerReport {
    pub fn conditions_hold(&self) -> bool {
        self.condition1_violation_count == 0 && self.condition2_violation_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub const WITNESS_CAP: usize = 100;

/// Checks `lambda(-A) = -lambda(A)` for every nonzero `A` and
/// `|lambda(A1)| = |lambda(A2)| => lambda(A1) = lambda(A2)` for every pair
/// `A1 ⪯ A2`.
pub fn verify_tucker_conditions(lambda: &LabelFunction) -> Result<TuckerReport> {
    let n = lambda.n();
    if n > VERIFY_CAP {
        return Err(Error::Capacity(format!("exhaustive check limited to n <= {VERIFY_CAP}, got {n}")));
    }
    let size = 3usize.pow(n);
    // Base-3 index: digit 1 for +, 2 for -.
    let pow3: Vec<usize> = (0..1u64 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| 3usize.pow(i)).sum())
        .collect();
    let idx = |plus: u64, minus: u64| pow3[plus as usize] + 2 * pow3[minus as usize];
    let mut label = vec![0i32; size];
    let mut max_abs = 0u32;
    let full = (1u64 << n) - 1;
    for support in 1..=full {
        let mut sub = support;
        loop {
            let a = SignedSet { n, plus: sub, minus: support & !sub };
            let l = lambda.evaluate(&a)?;
            max_abs = max_abs.max(l.unsigned_abs());
            label[idx(a.plus, a.minus)] = l;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & support;
        }
    }

    let mut c1 = Vec::new();
    let mut c1_count = 0u64;
    let mut c2 = Vec::new();
    let mut c2_count = 0u64;
    let mut pairs = 0u64;
    for support in 1..=full {
        let mut sub = support;
        loop {
            let a2 = SignedSet { n, plus: sub, minus: support & !sub };
            let l2 = label[idx(a2.plus, a2.minus)];
            let ln = label[idx(a2.minus, a2.plus)];
            if ln != -l2 {
                c1_count += 1;
                if c1.len() < WITNESS_CAP {
                    c1.push(AntipodalViolation { set: a2, label: l2, negated_label: ln });
                }
            }
            // Every nonzero A1 ⪯ A2 is a restriction of A2 to a subset of its support.
            let mut s1 = support;
            while s1 != 0 {
                pairs += 1;
                let (p1, m1) = (a2.plus & s1, a2.minus & s1);
                let l1 = label[idx(p1, m1)];
                if l1.unsigned_abs() == l2.unsigned_abs() && l1 != l2 {
                    c2_count += 1;
                    if c2.len() < WITNESS_CAP {
                        c2.push(MonotoneViolation {
                            smaller: SignedSet { n, plus: p1, minus: m1 },
                            larger: a2,
                            smaller_label: l1,
                            larger_label: l2,
                        });
                    }
                }
                s1 = (s1 - 1) & support;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & support;
        }
    }

    let scheme_range = match lambda.scheme {
        LabelScheme::Published => lambda.range_m + 1,
        LabelScheme::ShiftedThreshold => lambda.range_m,
    };
    let conditions = c1_count == 0 && c2_count == 0;
    let bound = (conditions && max_abs <= scheme_range)
        .then(|| n.saturating_sub(lambda.svec().sum_head() + (scheme_range - lambda.range_m)));
    let coloring_proper = validate_coloring(&lambda.graph, &lambda.coloring)?.proper;
    Ok(TuckerReport {
        n,
        svec: lambda.svec().clone(),
        palette: lambda.palette,
        scheme: lambda.scheme,
        coloring_proper,
        range_m: lambda.range_m,
        max_abs_label: max_abs,
        range_ok: max_abs <= lambda.range_m,
        condition1_violations: c1,
        condition1_violation_count: c1_count,
        condition2_violations: c2,
        condition2_violation_count: c2_count,
        pairs_checked: pairs,
        bound,
    })
}

/// `n - sum(s_1..s_(k-1))`, certified by the shifted-threshold labeling of
/// `c` passing both conditions within range `t + sum(s_1..s_(k-1))`.
pub fn tucker_lower_bound(n: u32, svec: &StabilityVector, c: &Coloring) -> Result<u32> {
    let lambda = build_lambda_with(n, svec, c, LabelScheme::ShiftedThreshold)?;
    let report = verify_tucker_conditions(&lambda)?;
    let Some(bound) = report.bound else {
        return Err(Error::State(format!(
            "labeling not verified: {} antipodality and {} monotonicity violations, max label {} vs range {}",
            report.condition1_violation_count, report.condition2_violation_count, report.max_abs_label, report.range_m
        )));
    };
    if c.palette_size() < bound {
        return Err(Error::InternalContract(format!(
            "coloring uses {} colors, below the certified bound {bound}",
            c.palette_size()
        )));
    }
    Ok(bound)
}

/// Whether every `F_j` built along the way is a vertex; exposed for the
/// property suite.
pub fn f_sets_are_stable(a: &SignedSet, svec: &StabilityVector) -> Result<bool> {
    let sets = f_sets(a, svec)?;
    Ok(sets.iter().all(|f| vec_stable_unchecked(*f, a.n, svec.as_slice())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::block_coloring;

    fn sv(s: &[u32]) -> StabilityVector {
        StabilityVector::new(s.to_vec()).unwrap()
    }

    #[test]
    fn alt_examples() {
        let a = alt_set(&SignedSet::new(&[1, -1, 1]).unwrap()).unwrap();
        assert_eq!((a.chosen, a.length, a.sign), (vec![1, 2, 3], 3, 1));
        let a = alt_set(&SignedSet::new(&[1, 1, 0, -1]).unwrap()).unwrap();
        assert_eq!((a.chosen, a.length, a.sign), (vec![1, 4], 2, 1));
        let a = alt_set(&SignedSet::new(&[-1, -1, -1]).unwrap()).unwrap();
        assert_eq!((a.chosen, a.length, a.sign), (vec![1], 1, -1));
        assert!(alt_set(&SignedSet::new(&[0, 0]).unwrap()).is_err());
        assert!(SignedSet::new(&[2]).is_err());
    }

    #[test]
    fn f_sets_example() {
        let signs: Vec<i8> = (0..9).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        let a = SignedSet::new(&signs).unwrap();
        let f = f_sets(&a, &sv(&[2, 2])).unwrap();
        assert_eq!(f[0].elements(), vec![1, 3]);
        assert_eq!(f[1].elements(), vec![2, 4]);
        assert_eq!(f[0].mask() & a.plus(), f[0].mask());
        assert_eq!(f[1].mask() & a.minus(), f[1].mask());
        let short = SignedSet::new(&[1, -1, 1, -1, 0, 0, 0, 0, 0]).unwrap();
        assert!(f_sets(&short, &sv(&[2, 2])).is_err());
        assert!(f_sets(&a, &sv(&[3, 2])).is_err());
        assert!(f_sets(&a, &sv(&[2, 4])).is_err());
    }

    #[test]
    fn small_case_labels() {
        let h = build_stable_kneser(8, 2, 2, &sv(&[2, 2])).unwrap();
        let c = block_coloring(&h).unwrap();
        let l = build_lambda(8, &sv(&[2, 2]), &c).unwrap();
        assert_eq!(l.evaluate(&SignedSet::new(&[1, 0, -1, 0, 0, 0, 0, 0]).unwrap()).unwrap(), 2);
        assert_eq!(l.range_m(), c.palette_size() + 2);
    }

    #[test]
    fn n1_only_antipodality() {
        let h = build_stable_kneser(1, 1, 2, &sv(&[1])).unwrap();
        let c = Coloring::constant(h.vertex_count());
        let l = build_lambda(1, &sv(&[1]), &c).unwrap();
        let r = verify_tucker_conditions(&l).unwrap();
        assert!(r.conditions_hold());
        assert_eq!(r.pairs_checked, 2);
    }

    #[test]
    fn cap_enforced() {
        let h = build_stable_kneser(11, 2, 2, &sv(&[2, 2])).unwrap();
        let c = block_coloring(&h).unwrap();
        let l = build_lambda(11, &sv(&[2, 2]), &c).unwrap();
        assert!(matches!(verify_tucker_conditions(&l), Err(Error::Capacity(_))));
    }
}
