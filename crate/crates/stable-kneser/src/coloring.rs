//! Colorings of stable Kneser hypergraphs: the representation, validation,
//! and the explicit constructions that give upper bounds.
//!
//! * [`block_coloring`]: color a vertex by the first block of `r - 1`
//!   consecutive elements it meets, over the first `n - (s_1 + ... + s_{k-1})`
//!   elements.
//! * [`afl_min_block_coloring`]: the classic coloring of the full Kneser
//!   hypergraph `KG^r(n,k)` by `ceil(min(A) / (r - 1))`, capped.
//! * [`interval_coloring`]: for graphs (`r = 2`) with `s_k > min(s_1..s_{k-1})`,
//!   color by the least element inside a fixed interval, after dropping the
//!   elements before the position of the minimum gap.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{vec_stable_unchecked, KSubset, StabilityVector};
use crate::error::{arg, Error, Result};
use crate::hypergraph::{build_kneser, build_stable_kneser, Hypergraph};

/// A total vertex coloring with colors `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson")]
pub struct Coloring {
    palette_size: u32,
    assignment: Vec<u32>,
}

#[derive(Deserialize)]
struct ColoringJson {
    palette_size: u32,
    assignment: Vec<u32>,
}

impl TryFrom<ColoringJson> for Coloring {
    type Error = Error;
    fn try_from(raw: ColoringJson) -> Result<Coloring> {
        let c = Coloring::new(raw.assignment)?;
        if c.palette_size != raw.palette_size {
            return arg(format!("palette_size {} but {} distinct colors", raw.palette_size, c.palette_size));
        }
        Ok(c)
    }
}

impl Coloring {
    pub fn new(assignment: Vec<u32>) -> Result<Coloring> {
        if assignment.contains(&0) {
            return arg("colors must be positive");
        }
        let palette_size = assignment.iter().collect::<BTreeSet<_>>().len() as u32;
        Ok(Coloring { palette_size, assignment })
    }

    /// Everything gets color 1.
    pub fn constant(vertex_count: usize) -> Coloring {
        Coloring { palette_size: u32::from(vertex_count > 0), assignment: vec![1; vertex_count] }
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.assignment[v]
    }

    /// Distinct colors in increasing order.
    pub fn colors(&self) -> Vec<u32> {
        self.assignment.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Vertex ids of each color class, in increasing color order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let colors = self.colors();
        let mut out = vec![Vec::new(); colors.len()];
        for (v, c) in self.assignment.iter().enumerate() {
            let idx = colors.binary_search(c).expect("color present");
            out[idx].push(v);
        }
        out
    }

    /// Same classes relabeled `1..=t` in increasing order of old color.
    pub fn normalized(&self) -> Coloring {
        let colors = self.colors();
        let assignment = self
            .assignment
            .iter()
            .map(|c| colors.binary_search(c).expect("color present") as u32 + 1)
            .collect();
        Coloring { palette_size: self.palette_size, assignment }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }
}

/// Outcome of [`validate_coloring`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringValidation {
    pub proper: bool,
    pub violating_edge: Option<Vec<usize>>,
    pub colors_used: u32,
}

/// Checks that no color class contains `r` pairwise disjoint vertices. The
/// reported edge comes from the smallest offending color.
pub fn validate_coloring(h: &Hypergraph, c: &Coloring) -> Result<ColoringValidation> {
    if c.len() != h.vertex_count() {
        return arg(format!("coloring covers {} vertices, hypergraph has {}", c.len(), h.vertex_count()));
    }
    let violating_edge = c.classes().iter().find_map(|class| h.class_has_r_disjoint(class, h.r()));
    Ok(ColoringValidation { proper: violating_edge.is_none(), violating_edge, colors_used: c.palette_size() })
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

/// Block coloring: with `d = n - (s_1 + ... + s_{k-1})` and blocks
/// `A_i = {(i-1)(r-1)+1, ..., i(r-1)}` cut from `[d]`, a vertex gets the index
/// of the first block it meets. Uses at most `ceil(d / (r-1))` colors.
pub fn block_coloring(h: &Hypergraph) -> Result<Coloring> {
    let svec = h.svec();
    if h.n() < svec.sum() {
        return arg(format!("block coloring needs n >= {} (sum of the stability vector), got n = {}", svec.sum(), h.n()));
    }
    let d = h.n() - svec.sum_head();
    let width = h.r() - 1;
    let assignment = h
        .vertices()
        .iter()
        .map(|v| {
            let lo = v.min().unwrap_or(0);
            if lo == 0 || lo > d {
                Err(Error::InternalContract(format!("vertex {v} meets none of the blocks covering [1, {d}]")))
            } else {
                Ok(ceil_div(lo, width))
            }
        })
        .collect::<Result<Vec<u32>>>()?;
    Coloring::new(assignment)
}

/// Number of colors of the classic coloring of `KG^r(n,k)`:
/// `ceil((n - r(k-1)) / (r-1))`.
pub fn afl_palette_bound(n: u32, k: u32, r: u32) -> Result<u32> {
    if r < 2 || k < 1 {
        return arg("afl coloring needs r >= 2 and k >= 1");
    }
    if n < r * k {
        return arg(format!("afl coloring needs n >= rk = {}, got n = {n}", r * k));
    }
    Ok(ceil_div(n - r * (k - 1), r - 1))
}

fn afl_color(v: KSubset, r: u32, cap: u32) -> u32 {
    let lo = v.min().expect("nonempty vertex");
    if lo <= (cap - 1) * (r - 1) {
        ceil_div(lo, r - 1)
    } else {
        cap
    }
}

/// The classic coloring of the full Kneser hypergraph `KG^r(n,k)`, over the
/// vertex order of [`build_kneser`].
pub fn afl_min_block_coloring(n: u32, k: u32, r: u32) -> Result<Coloring> {
    let cap = afl_palette_bound(n, k, r)?;
    let h = build_kneser(n, k, r)?;
    Coloring::new(h.vertices().iter().map(|&v| afl_color(v, r, cap)).collect())
}

/// The same rule restricted to the vertices of `h` (any sub-hypergraph of
/// `KG^r(n,k)`).
pub fn afl_min_block_coloring_for(h: &Hypergraph) -> Result<Coloring> {
    let cap = afl_palette_bound(h.n(), h.k(), h.r())?;
    Coloring::new(h.vertices().iter().map(|&v| afl_color(v, h.r(), cap)).collect())
}

/// Which construction produced a coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Block,
    Afl,
    Interval,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Block => "block",
            Scheme::Afl => "afl",
            Scheme::Interval => "interval",
        }
    }
}

/// A constructed coloring together with the construction that won.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeColoring {
    pub scheme: Scheme,
    pub coloring: Coloring,
}

/// The better of the block coloring and the classic coloring (each used
/// when its precondition holds); ties go to the block coloring.
/// Palette at most `ceil((n - max{r(k-1), s_1+...+s_{k-1}}) / (r-1))`.
pub fn lemma_coloring(h: &Hypergraph) -> Result<SchemeColoring> {
    let block = block_coloring(h).ok().map(|coloring| SchemeColoring { scheme: Scheme::Block, coloring });
    let afl = afl_min_block_coloring_for(h).ok().map(|coloring| SchemeColoring { scheme: Scheme::Afl, coloring });
    match (block, afl) {
        (Some(b), Some(a)) if a.coloring.palette_size() < b.coloring.palette_size() => Ok(a),
        (Some(b), _) => Ok(b),
        (None, Some(a)) => Ok(a),
        (None, None) => arg(format!(
            "neither construction applies: n = {} is below both {} and rk = {}",
            h.n(),
            h.svec().sum(),
            h.r() * h.k()
        )),
    }
}

/// Smallest-palette coloring among all constructions that apply to `h`
/// (block, classic, and for graphs the interval coloring, also for the
/// vector with `s_k` capped at `2m`, whose vertex set contains that of `h`).
pub fn best_construction(h: &Hypergraph) -> Result<SchemeColoring> {
    let mut best = lemma_coloring(h)?;
    if h.r() == 2 {
        let mut vectors = vec![h.svec().clone()];
        if let Some(m) = h.svec().min_head() {
            if h.svec().last() > 2 * m {
                let mut capped = h.svec().as_slice().to_vec();
                *capped.last_mut().expect("k >= 2") = 2 * m;
                vectors.push(StabilityVector::new(capped)?);
            }
        }
        for svec in &vectors {
            let Ok(plan) = IntervalPlan::new(h.n(), svec) else { continue };
            if let Ok(assignment) = h.vertices().iter().map(|&v| plan.color(v)).collect::<Result<Vec<u32>>>() {
                let c = Coloring::new(assignment)?;
                if c.palette_size() < best.coloring.palette_size() {
                    best = SchemeColoring { scheme: Scheme::Interval, coloring: c };
                }
            }
        }
    }
    Ok(best)
}

/// `{b_j - σ, ..., b_k - σ}` with `σ = s_1 + ... + s_{j-1}`: maps
/// `KG(n,k)_s` into `KG(n - σ, k - j + 1)_(s_j, ..., s_k)`.
pub fn reindex_homomorphism(b: KSubset, j: usize, svec: &StabilityVector, n: u32) -> Result<KSubset> {
    let k = svec.k();
    if j < 1 || j > k {
        return arg(format!("index j = {j} outside [1, {k}]"));
    }
    if b.len() != k || !vec_stable_unchecked(b, n, svec.as_slice()) {
        return arg(format!("{b} is not an {svec}-stable {k}-subset of [{n}]"));
    }
    Ok(reindex_unchecked(b, j, svec))
}

fn reindex_unchecked(b: KSubset, j: usize, svec: &StabilityVector) -> KSubset {
    let sigma: u32 = svec.as_slice()[..j - 1].iter().sum();
    KSubset::from_mask(b.iter().skip(j - 1).fold(0u64, |m, e| m | 1 << (e - sigma - 1)))
}

/// Precomputed parameters of the interval coloring.
struct IntervalPlan {
    /// 1-based position of the first minimal gap among `s_1..s_{k-1}`.
    j: usize,
    svec: StabilityVector,
    lo: u32,
    hi: u32,
    /// Whether `s_k <= m`, in which case the block coloring is used instead.
    block_case: bool,
    n: u32,
}

impl IntervalPlan {
    fn new(n: u32, svec: &StabilityVector) -> Result<IntervalPlan> {
        let k = svec.k();
        if k < 2 {
            return arg("interval coloring needs k >= 2");
        }
        let s = svec.as_slice();
        let m = svec.min_head().expect("k >= 2");
        if svec.last() > 2 * m {
            return arg(format!("interval coloring needs s_k <= 2 min(s_1..s_(k-1)) = {}, got {}", 2 * m, svec.last()));
        }
        if n < svec.sum() {
            return arg(format!("interval coloring needs n >= {}, got n = {n}", svec.sum()));
        }
        let j = s.iter().position(|&x| x == m).expect("minimum present") + 1;
        let sigma: u32 = s[..j - 1].iter().sum();
        let reduced = &s[j - 1..];
        let n_red = n - sigma;
        let tail: u32 = reduced[1..].iter().sum();
        let lo = reduced[0] + 1;
        // n' - (s*_2 + ... + s*_k' - s*_1); nonnegative because n' >= sum of reduced.
        let hi = n_red + reduced[0] - tail;
        Ok(IntervalPlan { j, svec: svec.clone(), lo, hi, block_case: svec.last() <= m, n })
    }

    fn color(&self, b: KSubset) -> Result<u32> {
        if self.block_case {
            let lo = b.min().expect("nonempty vertex");
            let d = self.n - self.svec.sum_head();
            if lo > d {
                return Err(Error::InternalContract(format!("vertex {b} has minimum above {d}")));
            }
            return Ok(lo);
        }
        let image = reindex_unchecked(b, self.j, &self.svec);
        image
            .iter()
            .find(|&x| x >= self.lo && x <= self.hi)
            .map(|x| x - self.lo + 1)
            .ok_or_else(|| {
                Error::InternalContract(format!(
                    "vertex {b} (reduced to {image}) avoids the interval [{}, {}]",
                    self.lo, self.hi
                ))
            })
    }
}

/// Interval coloring of `KG^2(n,k)_s` over the vertex order of
/// [`build_stable_kneser`]. Uses `n - (s_1+...+s_{k-1}) - max(0, s_k - m)`
/// colors, `m = min(s_1..s_{k-1})`, labeled `1..=t`.
pub fn interval_coloring(n: u32, svec: &StabilityVector) -> Result<Coloring> {
    let plan = IntervalPlan::new(n, svec)?;
    let h = build_stable_kneser(n, svec.k() as u32, 2, svec)?;
    if plan.block_case {
        return block_coloring(&h);
    }
    Coloring::new(h.vertices().iter().map(|&v| plan.color(v)).collect::<Result<Vec<u32>>>()?)
}
