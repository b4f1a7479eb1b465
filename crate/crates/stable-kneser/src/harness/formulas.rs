//! Closed-form chromatic numbers and their parameter preconditions.
//!
//! Every formula returns `None` when its preconditions fail.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{KSubset, StabilityVector};
use crate::error::{arg, Result};

fn ceil_div(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

fn head(svec: &[u32]) -> &[u32] {
    &svec[..svec.len().saturating_sub(1)]
}

/// `n - 2(k-1)` for uniformly 2-stable graphs, `n >= 2k`.
pub fn formula_schrijver(n: u32, k: u32) -> Option<u32> {
    (k >= 1 && n >= 2 * k).then(|| n - 2 * (k - 1))
}

/// `ceil((n - max{r,s}(k-1)) / (r-1))` for `r, s >= 2`, `n >= max{r,s} k`.
pub fn formula_meunier(n: u32, k: u32, r: u32, s: u32) -> Option<u32> {
    let big = r.max(s);
    if r < 2 || s < 2 || k < 1 || n < big * k {
        return None;
    }
    Some(ceil_div((n - big * (k - 1)) as i64, (r - 1) as i64) as u32)
}

/// Upper bound `ceil((n - max{r(k-1), s_1+...+s_{k-1}}) / (r-1))` of the
/// block and classic colorings; `None` when the numerator is negative.
pub fn formula_coloring_upper(n: u32, r: u32, svec: &[u32]) -> Option<u32> {
    let k = svec.len() as u32;
    if r < 2 || k == 0 {
        return None;
    }
    let used = (r * (k - 1)).max(head(svec).iter().sum());
    (n >= used).then(|| ceil_div((n - used) as i64, (r - 1) as i64) as u32)
}

/// `n - sum_{i<k} s_i - max{0, s_k - m}` without checking the proof
/// hypotheses; requires `k >= 2`, `s_i >= 2` for `i < k`, `s_k <= 2m` and
/// `n >= sum s_i`.
pub fn formula_min_excess(n: u32, svec: &[u32]) -> Option<u32> {
    let k = svec.len();
    if k < 2 || head(svec).iter().any(|&s| s < 2) {
        return None;
    }
    let m = *head(svec).iter().min().expect("k >= 2");
    let last = svec[k - 1];
    let total: u32 = svec.iter().sum();
    if last > 2 * m || n < total {
        return None;
    }
    Some(n - head(svec).iter().sum::<u32>() - last.saturating_sub(m))
}

/// [`formula_min_excess`] under the proven hypotheses: `m = 2` or every
/// `s_i` with `i < k` even.
pub fn formula_thm_main2(n: u32, k: u32, svec: &[u32]) -> Option<u32> {
    if svec.len() != k as usize || k < 2 {
        return None;
    }
    let m = head(svec).iter().min().copied()?;
    let eligible = m == 2 || head(svec).iter().all(|s| s % 2 == 0);
    if !eligible {
        return None;
    }
    formula_min_excess(n, svec)
}

/// `n - sum_{i<k} s_i` for `s_i >= 2` (`i < k`), `s_k in {1,2}` and
/// `n >= sum_{i<k} s_i + 2`.
pub fn formula_small_last(n: u32, k: u32, svec: &[u32]) -> Option<u32> {
    if svec.len() != k as usize || k < 2 || head(svec).iter().any(|&s| s < 2) {
        return None;
    }
    let last = svec[svec.len() - 1];
    let sum_head: u32 = head(svec).iter().sum();
    (matches!(last, 1 | 2) && n >= sum_head + 2).then(|| n - sum_head)
}

/// `n - 2 s_1` for `2 s_1 <= s_2 <= 3 s_1` and `n >= 2 s_2 - 2`.
pub fn formula_thm_main3(n: u32, s1: u32, s2: u32) -> Option<u32> {
    (s1 >= 1 && 2 * s1 <= s2 && s2 <= 3 * s1 && n + 2 >= 2 * s2).then(|| n - 2 * s1)
}

/// The vector `(s_1 2^m, ..., s_{k-1} 2^m, 2^{m+1})` for a base vector
/// ending in 2.
pub fn stretched_vector(m_exp: u32, base: &[u32]) -> Vec<u32> {
    let p = 1u32 << m_exp;
    let mut out: Vec<u32> = head(base).iter().map(|s| s * p).collect();
    out.push(2 * p);
    out
}

/// Inverse of [`stretched_vector`]: `(m, base)` when `svec` ends in a power
/// of two `2^{m+1}` and the other entries are multiples of `2^m`.
pub fn unstretch(svec: &[u32]) -> Option<(u32, Vec<u32>)> {
    let last = *svec.last()?;
    if last < 2 || !last.is_power_of_two() {
        return None;
    }
    let m_exp = last.trailing_zeros() - 1;
    let p = 1u32 << m_exp;
    if head(svec).iter().any(|s| s % p != 0) {
        return None;
    }
    let mut base: Vec<u32> = head(svec).iter().map(|s| s / p).collect();
    base.push(2);
    Some((m_exp, base))
}

/// `ceil((n - 2^m sum_{i<k} s_i) / (2^{m+1} - 1))`, the chromatic number of
/// the `2^{m+1}`-uniform hypergraph on the stretched vector, for a base
/// `(s_1, ..., s_{k-1}, 2)` with `s_i >= 2` and `n >= 2^m (sum_{i<k} s_i + 2)`.
pub fn formula_thm_vecstable(n: u32, k: u32, m_exp: u32, base: &[u32]) -> Option<u32> {
    if base.len() != k as usize || k < 2 || m_exp > 8 || base[base.len() - 1] != 2 {
        return None;
    }
    if head(base).iter().any(|&s| s < 2) {
        return None;
    }
    let p = 1i64 << m_exp;
    let sum_head: i64 = head(base).iter().map(|&s| s as i64).sum();
    if (n as i64) < p * (sum_head + 2) {
        return None;
    }
    Some(ceil_div(n as i64 - p * sum_head, 2 * p - 1) as u32)
}

/// `alpha(W(n, s_1, s_2)) = 2 s_1` for `s_2 >= 2 s_1` and `n >= 2 s_2 - 2`.
pub fn formula_w_alpha(n: u32, s1: u32, s2: u32) -> Option<u32> {
    (s1 >= 1 && s2 >= 2 * s1 && n + 2 >= 2 * s2).then_some(2 * s1)
}

/// Residue `rho = (n - 3 2^m (k-1)) mod (2^{m+1} - 1)` and its membership in
/// the three candidate residue sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModCondition {
    pub rho: u32,
    /// `{2^m + 1, ..., 2^{m+1} - 1}` as stated with the theorem.
    pub theorem_set: bool,
    /// `{2^m, ..., 2^{m+1} - 2}` as used inside its proof.
    pub proof_set: bool,
    /// `{0} ∪ {2^m + 1, ..., 2^{m+1} - 2}`, where the ceiling identity holds.
    pub derived_set: bool,
}

fn residue_sets(m_exp: u32) -> ([u32; 2], [u32; 2], [u32; 2]) {
    let p = 1u32 << m_exp;
    ([p + 1, 2 * p - 1], [p, 2 * p - 2], [p + 1, 2 * p - 2])
}

fn in_range(x: u32, r: [u32; 2]) -> bool {
    r[0] <= x && x <= r[1]
}

fn derived_member(rho: u32, m_exp: u32) -> bool {
    rho == 0 || in_range(rho, residue_sets(m_exp).2)
}

pub fn main1_mod_condition(n: u32, k: u32, m_exp: u32) -> Result<ModCondition> {
    if m_exp == 0 || m_exp > 16 {
        return arg(format!("exponent m = {m_exp} must lie in 1..=16"));
    }
    if k == 0 {
        return arg("k must be positive");
    }
    let p = 1i64 << m_exp;
    let d = 2 * p - 1;
    let rho = (n as i64 - 3 * p * (k as i64 - 1)).rem_euclid(d) as u32;
    let (theorem, proof, _) = residue_sets(m_exp);
    Ok(ModCondition {
        rho,
        theorem_set: in_range(rho, theorem),
        proof_set: in_range(rho, proof),
        derived_set: derived_member(rho, m_exp),
    })
}

/// `ceil((x - 2^m) / d) == ceil(x / d)` with `d = 2^{m+1} - 1`.
pub fn ceiling_identity_holds(x: i64, m_exp: u32) -> bool {
    let p = 1i64 << m_exp;
    let d = 2 * p - 1;
    ceil_div(x - p, d) == ceil_div(x, d)
}

/// Outcome of checking the derived residue set against the ceiling identity
/// for one exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSetCheck {
    pub m_exp: u32,
    pub modulus: u32,
    pub theorem_set: Vec<u32>,
    pub proof_set: Vec<u32>,
    pub derived_set: Vec<u32>,
    /// Residues where the identity holds, from brute force over `x in [0, 10d]`.
    pub identity_set: Vec<u32>,
    pub xs_checked: u32,
    pub derived_matches_identity: bool,
    pub discrepancies: Vec<String>,
}

/// Brute-force check of the derived residue set for every `m` in `1..=m_max`.
pub fn residue_set_report(m_max: u32) -> Vec<ResidueSetCheck> {
    (1..=m_max)
        .map(|m_exp| {
            let p = 1u32 << m_exp;
            let d = 2 * p - 1;
            let (theorem, proof, _) = residue_sets(m_exp);
            let list = |f: &dyn Fn(u32) -> bool| (0..d).filter(|&x| f(x)).collect::<Vec<u32>>();
            let theorem_set = list(&|x| in_range(x, theorem));
            let proof_set = list(&|x| in_range(x, proof));
            let derived_set = list(&|x| derived_member(x, m_exp));
            let mut identity = vec![true; d as usize];
            let mut agree = true;
            for x in 0..=10 * d {
                let holds = ceiling_identity_holds(x as i64, m_exp);
                identity[(x % d) as usize] &= holds;
                agree &= holds == derived_member(x % d, m_exp);
            }
            let identity_set = list(&|x| identity[x as usize]);
            let mut discrepancies = Vec::new();
            let describe = |name: &str, set: &[u32]| {
                let extra: Vec<u32> = set.iter().copied().filter(|x| !identity_set.contains(x)).collect();
                let missing: Vec<u32> = identity_set.iter().copied().filter(|x| !set.contains(x)).collect();
                (!extra.is_empty() || !missing.is_empty()).then(|| {
                    format!("m={m_exp}: {name} set {set:?} vs identity set {identity_set:?} (extra {extra:?}, missing {missing:?})")
                })
            };
            discrepancies.extend(describe("theorem", &theorem_set));
            discrepancies.extend(describe("proof", &proof_set));
            discrepancies.extend(describe("derived", &derived_set));
            ResidueSetCheck {
                m_exp,
                modulus: d,
                derived_matches_identity: agree && derived_set == identity_set,
                theorem_set,
                proof_set,
                derived_set,
                identity_set,
                xs_checked: 10 * d + 1,
                discrepancies,
            }
        })
        .collect()
}

/// The `r` translated vertices `{i, s_1 + i, s_1 + s_2 + i, ...}`,
/// `i = 1..=r`; `None` when they do not fit in `[n]`.
pub fn translated_vertices(n: u32, r: u32, svec: &StabilityVector) -> Option<Vec<KSubset>> {
    let offsets: Vec<u32> = svec
        .as_slice()
        .iter()
        .take(svec.k() - 1)
        .scan(0, |acc, &s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    if r == 0 || r + svec.sum_head() > n {
        return None;
    }
    (1..=r)
        .map(|i| {
            let elems: Vec<u32> = std::iter::once(i).chain(offsets.iter().map(|o| o + i)).collect();
            KSubset::new(n, &elems).ok()
        })
        .collect()
}
