//! Exact chromatic numbers of stable Kneser hypergraphs and exact
//! independence numbers of graphs.
//!
//! `decide` answers "is `H` `t`-colorable?" with one of two engines: a
//! star-cover search for graphs (`r = 2`) and DSATUR branch and bound for
//! everything else or when the cover search declines. `chromatic_number`
//! scans downward from a constructive coloring.

mod bits;
mod cover;
mod dsatur;
mod mis;
mod symmetry;

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coloring::{best_construction, validate_coloring, Coloring};
use crate::combinatorics::{vec_stable_unchecked, StabilityVector};
use crate::hypergraph::{Graph, Hypergraph};

use cover::{star_cover, CoverOutcome};
use dsatur::{dsatur, DsaturOutcome, MAX_COLORS};

pub const DEFAULT_DECISION_BUDGET: Duration = Duration::from_secs(60);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Wall-clock limit for each `t`-colorability decision; `None` waits.
    pub decision_budget: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { decision_budget: Some(DEFAULT_DECISION_BUDGET) }
    }
}

impl SolveOptions {
    pub fn unlimited() -> Self {
        SolveOptions { decision_budget: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Trivial,
    StarCover,
    Dsatur,
    /// Star cover on the uniformly stable core, refuting only.
    CoreStarCover,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Colorable(Coloring),
    NotColorable,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DecisionOutcome {
    Colorable,
    NotColorable,
    Indeterminate,
}

/// One decision call as recorded in a `ChiResult`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub colors: u32,
    pub outcome: DecisionOutcome,
    pub engine: Engine,
    pub nodes: u64,
    pub elapsed_ms: f64,
}

/// Is there a proper coloring of `h` with at most `t` colors? Runs without
/// a time limit.
pub fn is_t_colorable(h: &Hypergraph, t: u32) -> Option<Coloring> {
    match decide(h, t, None).0 {
        Decision::Colorable(c) => Some(c),
        Decision::NotColorable => None,
        Decision::Indeterminate => unreachable!("no deadline"),
    }
}

/// `t`-colorability with an optional time budget. Colorings come back
/// normalized to colors `1..=palette`.
pub fn decide(h: &Hypergraph, t: u32, budget: Option<Duration>) -> (Decision, DecisionRecord) {
    let start = Instant::now();
    let deadline = budget.map(|b| start + b);
    let (decision, engine, nodes) = decide_inner(h, t, deadline);
    let outcome = match decision {
        Decision::Colorable(_) => DecisionOutcome::Colorable,
        Decision::NotColorable => DecisionOutcome::NotColorable,
        Decision::Indeterminate => DecisionOutcome::Indeterminate,
    };
    let record = DecisionRecord { colors: t, outcome, engine, nodes, elapsed_ms: ms(start.elapsed()) };
    (decision, record)
}

fn decide_inner(h: &Hypergraph, t: u32, deadline: Option<Instant>) -> (Decision, Engine, u64) {
    let nv = h.vertex_count();
    if nv == 0 {
        return (Decision::Colorable(Coloring::constant(0)), Engine::Trivial, 0);
    }
    if t == 0 {
        return (Decision::NotColorable, Engine::Trivial, 0);
    }
    if !h.has_hyperedge() {
        return (Decision::Colorable(Coloring::constant(nv)), Engine::Trivial, 0);
    }
    if t == 1 {
        return (Decision::NotColorable, Engine::Trivial, 0);
    }
    if t as usize >= nv {
        let distinct = Coloring::new((1..=nv as u32).collect()).expect("positive colors");
        return (Decision::Colorable(distinct), Engine::Trivial, 0);
    }
    let masks: Vec<u64> = h.vertices().iter().map(|v| v.mask()).collect();
    let mut nodes = 0;
    if h.r() == 2 {
        if let Some(core) = uniform_core(h) {
            let core_masks: Vec<u64> = core.iter().map(|&i| masks[i]).collect();
            let run = star_cover(&core_masks, h.n(), t, deadline);
            nodes += run.nodes;
            match run.outcome {
                CoverOutcome::NotColorable => return (Decision::NotColorable, Engine::CoreStarCover, nodes),
                CoverOutcome::TimedOut => return (Decision::Indeterminate, Engine::CoreStarCover, nodes),
                CoverOutcome::Colorable(_) | CoverOutcome::Unsupported => {}
            }
        }
        let run = star_cover(&masks, h.n(), t, deadline);
        nodes += run.nodes;
        match run.outcome {
            CoverOutcome::Colorable(c) => return (Decision::Colorable(finish(c)), Engine::StarCover, nodes),
            CoverOutcome::NotColorable => return (Decision::NotColorable, Engine::StarCover, nodes),
            CoverOutcome::TimedOut => return (Decision::Indeterminate, Engine::StarCover, nodes),
            CoverOutcome::Unsupported => {}
        }
    }
    if t > MAX_COLORS {
        return (Decision::Indeterminate, Engine::Dsatur, nodes);
    }
    let run = dsatur(&masks, h.r(), t, deadline);
    nodes += run.nodes;
    let decision = match run.outcome {
        DsaturOutcome::Colorable(c) => Decision::Colorable(finish(c)),
        DsaturOutcome::NotColorable => Decision::NotColorable,
        DsaturOutcome::TimedOut => Decision::Indeterminate,
    };
    (decision, Engine::Dsatur, nodes)
}

fn finish(zero_based: Vec<u32>) -> Coloring {
    Coloring::new(zero_based.into_iter().map(|c| c + 1).collect())
        .expect("positive colors")
        .normalized()
}

/// For a vector `(s_1..s_k)` with `s_k < m = min(s_1..s_{k-1})` and all
/// leading entries equal to `m`, the ids of the `m`-stable vertices, whose
/// symmetry group is the full dihedral group. `None` when that is not a
/// proper nonempty subset.
fn uniform_core(h: &Hypergraph) -> Option<Vec<usize>> {
    let s = h.svec().as_slice();
    let k = s.len();
    if k < 2 {
        return None;
    }
    let m = h.svec().min_head()?;
    if s[..k - 1].iter().any(|&x| x != m) || s[k - 1] >= m {
        return None;
    }
    let uniform = vec![m; k];
    let ids: Vec<usize> = (0..h.vertex_count())
        .filter(|&i| vec_stable_unchecked(h.vertex(i), h.n(), &uniform))
        .collect();
    (!ids.is_empty() && ids.len() < h.vertex_count()).then_some(ids)
}

/// The chromatic number, or the marker for the null hypergraph, or bounds
/// when a decision ran out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiValue {
    NegInfinity,
    Exact(u32),
    Indeterminate { lower: u32, upper: u32 },
}

impl ChiValue {
    pub fn exact(self) -> Option<u32> {
        match self {
            ChiValue::Exact(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for ChiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiValue::NegInfinity => f.write_str("NEG_INFINITY"),
            ChiValue::Exact(c) => write!(f, "{c}"),
            ChiValue::Indeterminate { lower, upper } => write!(f, "INDETERMINATE [{lower}, {upper}]"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ChiValueJson {
    Exact(u32),
    Marker(String),
    Bounds { indeterminate: Bounds },
}

#[derive(Serialize, Deserialize)]
struct Bounds {
    lower: u32,
    upper: u32,
}

impl Serialize for ChiValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            ChiValue::NegInfinity => ChiValueJson::Marker("NEG_INFINITY".into()),
            ChiValue::Exact(c) => ChiValueJson::Exact(c),
            ChiValue::Indeterminate { lower, upper } => ChiValueJson::Bounds { indeterminate: Bounds { lower, upper } },
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ChiValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match ChiValueJson::deserialize(de)? {
            ChiValueJson::Exact(c) => Ok(ChiValue::Exact(c)),
            ChiValueJson::Marker(m) if m == "NEG_INFINITY" => Ok(ChiValue::NegInfinity),
            ChiValueJson::Marker(m) => Err(serde::de::Error::custom(format!("unknown chi marker {m:?}"))),
            ChiValueJson::Bounds { indeterminate } => {
                Ok(ChiValue::Indeterminate { lower: indeterminate.lower, upper: indeterminate.upper })
            }
        }
    }
}

/// Why `chi` colors are necessary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerBoundWitness {
    /// One color is needed for a nonempty vertex set.
    NonEmpty,
    /// Two colors are needed because these vertices form a hyperedge.
    Hyperedge { vertices: Vec<usize> },
    /// These pairwise disjoint vertices need `ceil(len / (r-1))` colors.
    Packing { vertices: Vec<usize> },
    /// An exhaustive search found no coloring with `colors` colors.
    Refutation { colors: u32, engine: Engine, nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiResult {
    pub chi: ChiValue,
    /// Proper coloring with `chi` colors (the best one found when
    /// indeterminate); absent for the null hypergraph.
    pub certificate: Option<Coloring>,
    pub lower_bound_witness: Option<LowerBoundWitness>,
    pub decisions: Vec<DecisionRecord>,
    pub elapsed_ms: f64,
}

impl ChiResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chi result serializes")
    }
}

/// Exact chromatic number with the default per-decision budget and the best
/// constructive coloring as the starting point.
pub fn chromatic_number(h: &Hypergraph, upper_hint: Option<&Coloring>) -> ChiResult {
    chromatic_number_with(h, upper_hint, &SolveOptions::default())
}

pub fn chromatic_number_with(h: &Hypergraph, upper_hint: Option<&Coloring>, opts: &SolveOptions) -> ChiResult {
    let start = Instant::now();
    let nv = h.vertex_count();
    let done = |chi, certificate, witness, decisions| ChiResult {
        chi,
        certificate,
        lower_bound_witness: witness,
        decisions,
        elapsed_ms: ms(start.elapsed()),
    };
    if nv == 0 {
        return done(ChiValue::NegInfinity, None, None, Vec::new());
    }
    let r = h.r();
    let all: Vec<usize> = (0..nv).collect();
    let Some(edge) = h.class_has_r_disjoint(&all, r) else {
        return done(ChiValue::Exact(1), Some(Coloring::constant(nv)), Some(LowerBoundWitness::NonEmpty), Vec::new());
    };
    let mut best = starting_coloring(h, upper_hint);
    let packing = mis::maximum_packing(h);
    let packing_bound = (packing.len() as u32).div_ceil(r - 1).max(2);
    let lower_witness = |colors: u32| {
        if colors == 2 && packing_bound <= 2 {
            LowerBoundWitness::Hyperedge { vertices: edge.clone() }
        } else {
            LowerBoundWitness::Packing { vertices: packing.clone() }
        }
    };
    let mut decisions = Vec::new();
    loop {
        let ub = best.palette_size();
        if ub <= packing_bound {
            return done(ChiValue::Exact(ub), Some(best), Some(lower_witness(ub)), decisions);
        }
        let (decision, record) = decide(h, ub - 1, opts.decision_budget);
        decisions.push(record.clone());
        match decision {
            Decision::Colorable(c) => {
                debug_assert!(c.palette_size() < ub);
                best = c;
            }
            Decision::NotColorable => {
                let witness = LowerBoundWitness::Refutation { colors: ub - 1, engine: record.engine, nodes: record.nodes };
                return done(ChiValue::Exact(ub), Some(best), Some(witness), decisions);
            }
            Decision::Indeterminate => {
                let chi = ChiValue::Indeterminate { lower: packing_bound, upper: ub };
                return done(chi, Some(best), Some(lower_witness(packing_bound)), decisions);
            }
        }
    }
}

/// The hint when it is a proper coloring of `h`, else the best explicit
/// construction, else one color per vertex.
fn starting_coloring(h: &Hypergraph, hint: Option<&Coloring>) -> Coloring {
    if let Some(c) = hint {
        if c.len() == h.vertex_count() && validate_coloring(h, c).is_ok_and(|v| v.proper) {
            return c.normalized();
        }
    }
    match best_construction(h) {
        Ok(sc) => sc.coloring.normalized(),
        Err(_) => Coloring::new((1..=h.vertex_count() as u32).collect()).expect("positive colors"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub alpha: usize,
    pub witness: Vec<usize>,
}

impl AlphaResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("alpha result serializes")
    }
}

/// Exact independence number with a deterministic witness.
pub fn independence_number(g: &Graph) -> AlphaResult {
    let witness = mis::maximum_independent_set(g);
    AlphaResult { alpha: witness.len(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// Largest set of pairwise disjoint vertices (a clique when `r = 2`).
pub fn max_disjoint_packing(h: &Hypergraph) -> Packing {
    let witness = mis::maximum_packing(h);
    Packing { size: witness.len(), witness }
}

/// `(s_1..s_{k-1}, max(s_k, m))` with `m = min(s_1..s_{k-1})`; the vertices
/// stable for it induce a subhypergraph with the same closed-form value.
pub fn core_vector(svec: &StabilityVector) -> StabilityVector {
    let mut s = svec.as_slice().to_vec();
    if let Some(m) = svec.min_head() {
        let last = s.len() - 1;
        s[last] = s[last].max(m);
    }
    StabilityVector::new(s).expect("entries stay positive")
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}
