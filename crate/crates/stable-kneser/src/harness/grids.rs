//! Default parameter grids per claim and the grid file format.
//!
//! A grid file is JSON: either an array of instances, or an object with
//! optional `instances` and `ranges` arrays. An instance gives `family`,
//! `n`, `r` (default 2) and either `svec` or `s` with `k`; `claim` defaults
//! to the claim of the sweep. A range gives `family`, `n: [lo, hi]`
//! (inclusive), optional `r` and `claim`, and either `svec: [[..], ..]` or
//! `s: [..]` with `k: [..]`; it expands to the cartesian product.

use serde::Deserialize;

use super::formulas::stretched_vector;
use super::{Claim, Family, InstanceSpec};
use crate::error::{arg, Error, Result};

fn uniform_range(claim: Claim, r: u32, s: u32, k: u32, ns: impl IntoIterator<Item = u32>) -> Vec<InstanceSpec> {
    ns.into_iter().map(|n| InstanceSpec::uniform(n, k, r, s, claim)).collect()
}

fn vector_range(claim: Claim, r: u32, svec: &[u32], lo: u32, hi: u32) -> Vec<InstanceSpec> {
    (lo..=hi).map(|n| InstanceSpec::vector(n, r, svec, claim)).collect()
}

/// Vectors `(s_1, ..., s_k)` with `s_i <= 4`, `k in {2, 3}`, `s_k <= 2m`
/// and `m = 2` or even heads.
pub fn min_excess_vectors() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for s1 in [2u32, 4] {
        for s2 in 1..=4.min(2 * s1) {
            out.push(vec![s1, s2]);
        }
    }
    for (a, b) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (4, 2), (4, 4)] {
        for s3 in 1..=4.min(2 * a.min(b)) {
            out.push(vec![a, b, s3]);
        }
    }
    out
}

/// The built-in grid for a claim, sized for desk-scale runs.
pub fn default_grid(claim: Claim) -> Result<Vec<InstanceSpec>> {
    let mut g = Vec::new();
    match claim {
        Claim::Schrijver => {
            g.extend(uniform_range(claim, 2, 2, 2, 4..=10));
            g.extend(uniform_range(claim, 2, 2, 3, 6..=10));
        }
        Claim::RStableConjecture => {
            g.extend(uniform_range(claim, 3, 3, 2, 6..=11));
            g.extend(uniform_range(claim, 3, 3, 3, 9..=11));
            g.extend(uniform_range(claim, 4, 4, 2, 8..=12));
        }
        Claim::StableConjecture => {
            g.extend(uniform_range(claim, 3, 4, 2, 8..=13));
            g.extend(uniform_range(claim, 3, 5, 2, 10..=13));
            g.extend(uniform_range(claim, 4, 5, 2, 10..=14));
        }
        Claim::PowerOfTwoStable => {
            g.extend(uniform_range(claim, 4, 6, 2, 12..=16));
            g.extend(uniform_range(claim, 4, 6, 3, 18..=21));
        }
        Claim::Kg4SixStable => g.extend(uniform_range(claim, 4, 6, 2, 12..=16)),
        Claim::Kg4FiveStableK2 => g.extend(uniform_range(claim, 4, 5, 2, [10, 11, 13, 14])),
        Claim::VectorSmallLast => {
            for s1 in 2..=4 {
                for s2 in 1..=2 {
                    g.extend(vector_range(claim, 2, &[s1, s2], s1 + 2, 11));
                }
            }
            for s in [[2u32, 2, 1], [2, 3, 2], [3, 3, 1]] {
                g.extend(vector_range(claim, 2, &s, s[0] + s[1] + 2, 11));
            }
        }
        Claim::VectorMinExcess => {
            for s in min_excess_vectors() {
                g.extend(vector_range(claim, 2, &s, s.iter().sum(), 12));
            }
        }
        Claim::VectorConjecture => {
            for s2 in 1..=6 {
                g.extend(vector_range(claim, 2, &[3, s2], 3 + s2, 12));
            }
            for s3 in 1..=3 {
                g.extend(vector_range(claim, 2, &[3, 3, s3], 6 + s3, 11));
            }
        }
        Claim::VectorK2WideLast => {
            for s1 in 1..=2 {
                for s2 in 2 * s1..=3 * s1 {
                    g.extend(vector_range(claim, 2, &[s1, s2], 2 * s2 - 2, 14));
                }
            }
        }
        Claim::VectorStretched => {
            for (m_exp, base, hi) in [(0u32, [2u32, 2], 10), (0, [3, 2], 10), (1, [2, 2], 13), (1, [3, 2], 14)] {
                let s = stretched_vector(m_exp, &base);
                let lo = (1 << m_exp) * (base[0] + 2);
                g.extend(vector_range(claim, 2 << m_exp, &s, lo, hi));
            }
        }
        Claim::LastEntryShift => {
            for s1 in 2..=4 {
                for e in 1..=s1 {
                    g.extend(vector_range(claim, 2, &[s1, s1 + e], 2 * s1 + e, 12));
                }
            }
            for e in 1..=2 {
                g.extend(vector_range(claim, 2, &[2, 2, 2 + e], 6 + e, 11));
            }
        }
        Claim::WGraphAlpha => {
            for s1 in 1..=3 {
                for s2 in 2 * s1..=9 {
                    for n in (2 * s2 - 2).max(2)..=16 {
                        g.push(InstanceSpec::w_graph(n, s1, s2));
                    }
                }
            }
        }
        Claim::None => return arg("claim `none` has no default grid"),
    }
    Ok(g)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceEntry {
    family: Family,
    n: u32,
    #[serde(default)]
    k: Option<u32>,
    #[serde(default = "two")]
    r: u32,
    #[serde(default)]
    s: Option<u32>,
    #[serde(default)]
    svec: Option<Vec<u32>>,
    #[serde(default)]
    claim: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeEntry {
    family: Family,
    n: [u32; 2],
    #[serde(default = "two_list")]
    r: Vec<u32>,
    #[serde(default)]
    k: Vec<u32>,
    #[serde(default)]
    s: Vec<u32>,
    #[serde(default)]
    svec: Vec<Vec<u32>>,
    #[serde(default)]
    claim: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridObject {
    #[serde(default)]
    instances: Vec<InstanceEntry>,
    #[serde(default)]
    ranges: Vec<RangeEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridFile {
    List(Vec<InstanceEntry>),
    Object(GridObject),
}

fn two() -> u32 {
    2
}

fn two_list() -> Vec<u32> {
    vec![2]
}

fn resolve_claim(text: &Option<String>, default: Claim) -> Result<Claim> {
    text.as_deref().map_or(Ok(default), Claim::parse)
}

fn make(family: Family, n: u32, r: u32, svec: Vec<u32>, claim: Claim) -> InstanceSpec {
    InstanceSpec { family, n, k: svec.len() as u32, r, svec, claim }
}

fn entry_vectors(family: Family, svec: Option<Vec<u32>>, s: Option<u32>, k: Option<u32>) -> Result<Vec<u32>> {
    match (svec, s, k) {
        (Some(v), None, k) if k.is_none_or(|k| k as usize == v.len()) => Ok(v),
        (Some(_), None, Some(_)) => arg("k disagrees with the length of svec"),
        (None, Some(s), Some(k)) => Ok(vec![s; k as usize]),
        (Some(_), Some(_), _) => arg("give either svec or s with k, not both"),
        _ => arg(format!("{family:?} instance needs svec, or s with k")),
    }
}

/// Parses a grid file; entries without a claim get `default_claim`.
pub fn parse_grid(text: &str, default_claim: Claim) -> Result<Vec<InstanceSpec>> {
    let grid: GridFile = serde_json::from_str(text).map_err(|e| Error::Argument(format!("bad grid file: {e}")))?;
    let (instances, ranges) = match grid {
        GridFile::List(l) => (l, Vec::new()),
        GridFile::Object(o) => (o.instances, o.ranges),
    };
    let mut out = Vec::new();
    for e in instances {
        let claim = resolve_claim(&e.claim, default_claim)?;
        let svec = entry_vectors(e.family, e.svec, e.s, e.k)?;
        out.push(make(e.family, e.n, e.r, svec, claim));
    }
    for e in ranges {
        let claim = resolve_claim(&e.claim, default_claim)?;
        let vectors: Vec<Vec<u32>> = match (e.svec.is_empty(), e.s.is_empty() || e.k.is_empty()) {
            (false, true) => e.svec.clone(),
            (true, false) => e.s.iter().flat_map(|&s| e.k.iter().map(move |&k| vec![s; k as usize])).collect(),
            _ => return arg("a range needs svec, or both s and k"),
        };
        if e.n[0] > e.n[1] {
            return arg(format!("empty n range {:?}", e.n));
        }
        for &r in &e.r {
            for v in &vectors {
                for n in e.n[0]..=e.n[1] {
                    out.push(make(e.family, n, r, v.clone(), claim));
                }
            }
        }
    }
    for s in &out {
        s.validate()?;
    }
    Ok(out)
}
