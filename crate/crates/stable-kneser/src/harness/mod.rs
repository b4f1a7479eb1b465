//! Sweeps parameter grids, comparing exact chromatic and independence
//! numbers with the closed-form values they are claimed to have.

pub mod formulas;
pub mod grids;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::coloring::{best_construction, validate_coloring, Coloring};
use crate::combinatorics::{are_pairwise_disjoint, StabilityVector};
use crate::error::{arg, Error, Result};
use crate::hypergraph::{build_stable_kneser, Hypergraph};
use crate::solver::{chromatic_number_with, independence_number, AlphaResult, ChiResult, ChiValue, SolveOptions};
use crate::tucker::{build_lambda_with, verify_tucker_conditions, LabelScheme, VERIFY_CAP};
use crate::wgraph::{build_w_graph, check_st_properties, coloring_to_st_partition, is_butterfly_free, st_partition_to_coloring};

use formulas::*;
pub use formulas::{main1_mod_condition, residue_set_report, ModCondition, ResidueSetCheck};

/// Which object an instance describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    UniformStable,
    VectorStable,
    WGraph,
}

/// Whether a claim is proven (asserted) or open (only reported).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Theorem,
    Conjecture,
    None,
}

/// A closed-form value an instance is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `n - 2(k-1)` for 2-stable graphs.
    Schrijver,
    /// `ceil((n - r(k-1)) / (r-1))` for `r`-stable `r`-uniform hypergraphs.
    RStableConjecture,
    /// `ceil((n - max{r,s}(k-1)) / (r-1))` for `s`-stable `r`-uniform hypergraphs.
    StableConjecture,
    /// The previous value for `r = 2^{m+1}`, `s = 3 2^m`, under the residue condition or `k = 2`.
    PowerOfTwoStable,
    /// `ceil((n - 6(k-1)) / 3)` for `KG^4(n,k)_6` when `3 | n` or `k = 2`.
    Kg4SixStable,
    /// `ceil((n - 5) / 3)` for `KG^4(n,2)_5` when `n >= 10`, `3 ∤ n`.
    Kg4FiveStableK2,
    /// `n - sum_{i<k} s_i` for vectors ending in 1 or 2.
    VectorSmallLast,
    /// `n - sum_{i<k} s_i - max{0, s_k - m}` under `m = 2` or even heads.
    VectorMinExcess,
    /// The same value without the parity hypotheses.
    VectorConjecture,
    /// `n - 2 s_1` for `2 s_1 <= s_2 <= 3 s_1`.
    VectorK2WideLast,
    /// `ceil((n - 2^m sum_{i<k} s_i) / (2^{m+1} - 1))` for stretched vectors.
    VectorStretched,
    /// `chi(n, (s.., m + e)) == chi(n - e, (s.., m))` for `0 < e <= m`.
    LastEntryShift,
    /// `alpha(W(n, s_1, s_2)) = 2 s_1`.
    WGraphAlpha,
    None,
}

const CLAIM_ALIASES: &[(&str, Claim)] = &[
    ("conjecture-1.1", Claim::RStableConjecture),
    ("conjecture-1.2", Claim::StableConjecture),
    ("theorem-1.3", Claim::PowerOfTwoStable),
    ("corollary-1.4", Claim::Kg4SixStable),
    ("corollary-1.5", Claim::Kg4FiveStableK2),
    ("theorem-1.6", Claim::VectorMinExcess),
    ("theorem-1.7", Claim::VectorK2WideLast),
    ("theorem-4.2", Claim::VectorStretched),
];

impl Claim {
    pub const ALL: [Claim; 14] = [
        Claim::Schrijver,
        Claim::RStableConjecture,
        Claim::StableConjecture,
        Claim::PowerOfTwoStable,
        Claim::Kg4SixStable,
        Claim::Kg4FiveStableK2,
        Claim::VectorSmallLast,
        Claim::VectorMinExcess,
        Claim::VectorConjecture,
        Claim::VectorK2WideLast,
        Claim::VectorStretched,
        Claim::LastEntryShift,
        Claim::WGraphAlpha,
        Claim::None,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Schrijver => "schrijver",
            Claim::RStableConjecture => "r-stable-conjecture",
            Claim::StableConjecture => "stable-conjecture",
            Claim::PowerOfTwoStable => "power-of-two-stable",
            Claim::Kg4SixStable => "kg4-six-stable",
            Claim::Kg4FiveStableK2 => "kg4-five-stable-k2",
            Claim::VectorSmallLast => "vector-small-last",
            Claim::VectorMinExcess => "vector-min-excess",
            Claim::VectorConjecture => "vector-conjecture",
            Claim::VectorK2WideLast => "vector-k2-wide-last",
            Claim::VectorStretched => "vector-stretched",
            Claim::LastEntryShift => "last-entry-shift",
            Claim::WGraphAlpha => "w-graph-alpha",
            Claim::None => "none",
        }
    }

    /// Accepts the ids of [`Claim::id`] and the numbered aliases.
    pub fn parse(text: &str) -> Result<Claim> {
        let t = text.trim().to_ascii_lowercase();
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == t)
            .or_else(|| CLAIM_ALIASES.iter().find(|(a, _)| *a == t).map(|&(_, c)| c))
            .ok_or_else(|| {
                let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).chain(CLAIM_ALIASES.iter().map(|a| a.0)).collect();
                Error::Argument(format!("unknown claim {text:?}; known: {}", ids.join(", ")))
            })
    }

    pub fn aliases(self) -> Vec<&'static str> {
        CLAIM_ALIASES.iter().filter(|a| a.1 == self).map(|a| a.0).collect()
    }

    pub fn kind(self) -> ClaimKind {
        match self {
            Claim::RStableConjecture | Claim::StableConjecture | Claim::VectorConjecture => ClaimKind::Conjecture,
            Claim::None => ClaimKind::None,
            _ => ClaimKind::Theorem,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One instance of a sweep: the object and the claim it is checked against.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub svec: Vec<u32>,
    pub claim: Claim,
}

impl InstanceSpec {
    pub fn uniform(n: u32, k: u32, r: u32, s: u32, claim: Claim) -> InstanceSpec {
        InstanceSpec { family: Family::UniformStable, n, k, r, svec: vec![s; k as usize], claim }
    }

    pub fn vector(n: u32, r: u32, svec: &[u32], claim: Claim) -> InstanceSpec {
        InstanceSpec { family: Family::VectorStable, n, k: svec.len() as u32, r, svec: svec.to_vec(), claim }
    }

    pub fn w_graph(n: u32, s1: u32, s2: u32) -> InstanceSpec {
        InstanceSpec { family: Family::WGraph, n, k: 2, r: 2, svec: vec![s1, s2], claim: Claim::WGraphAlpha }
    }

    pub fn validate(&self) -> Result<()> {
        if self.svec.len() != self.k as usize {
            return arg(format!("svec has {} entries but k = {}", self.svec.len(), self.k));
        }
        StabilityVector::new(self.svec.clone())?;
        if self.r < 2 {
            return arg(format!("uniformity r = {} must be at least 2", self.r));
        }
        if self.n > 64 {
            return Err(Error::Capacity(format!("n = {} exceeds 64", self.n)));
        }
        match self.family {
            Family::UniformStable if self.svec.iter().any(|&s| s != self.svec[0]) => {
                arg(format!("uniform family needs a constant vector, got {:?}", self.svec))
            }
            Family::WGraph if self.k != 2 || self.r != 2 => arg("w-graph instances need k = 2 and r = 2"),
            _ => Ok(()),
        }
    }

    /// Hex SHA-256 of the canonical JSON of the spec.
    pub fn key(&self) -> String {
        let digest = Sha256::digest(serde_json::to_vec(self).expect("spec serializes"));
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn stability(&self) -> Result<StabilityVector> {
        StabilityVector::new(self.svec.clone())
    }

    pub fn build(&self) -> Result<Hypergraph> {
        build_stable_kneser(self.n, self.k, self.r, &self.stability()?)
    }

    fn svec_text(&self) -> String {
        self.svec.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::WGraph => write!(f, "W({}, {}, {})", self.n, self.svec[0], self.svec[1]),
            _ => write!(f, "KG^{}({}, {})_({})", self.r, self.n, self.k, self.svec_text()),
        }
    }
}

/// A closed-form value, or the marker for unmet preconditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Value(u32),
    NotApplicable,
}

impl Expected {
    pub fn value(self) -> Option<u32> {
        match self {
            Expected::Value(v) => Some(v),
            Expected::NotApplicable => None,
        }
    }
}

impl From<Option<u32>> for Expected {
    fn from(v: Option<u32>) -> Self {
        v.map_or(Expected::NotApplicable, Expected::Value)
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Value(v) => write!(f, "{v}"),
            Expected::NotApplicable => f.write_str("NOT_APPLICABLE"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExpectedJson {
    Value(u32),
    Marker(String),
}

impl Serialize for Expected {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Expected::Value(v) => ExpectedJson::Value(v),
            Expected::NotApplicable => ExpectedJson::Marker("NOT_APPLICABLE".into()),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Expected {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match ExpectedJson::deserialize(de)? {
            ExpectedJson::Value(v) => Ok(Expected::Value(v)),
            ExpectedJson::Marker(m) if m == "NOT_APPLICABLE" => Ok(Expected::NotApplicable),
            ExpectedJson::Marker(m) => Err(serde::de::Error::custom(format!("unknown expected marker {m:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "INDETERMINATE")]
    Indeterminate,
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable,
    #[serde(rename = "CONJECTURE-CONSISTENT")]
    ConjectureConsistent,
    #[serde(rename = "CONJECTURE-INCONSISTENT")]
    ConjectureInconsistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Indeterminate => "INDETERMINATE",
            Verdict::NotApplicable => "NOT_APPLICABLE",
            Verdict::ConjectureConsistent => "CONJECTURE-CONSISTENT",
            Verdict::ConjectureInconsistent => "CONJECTURE-INCONSISTENT",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The exact value computed for an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Computed {
    Chi(ChiResult),
    Alpha(AlphaResult),
}

impl Computed {
    pub fn value(&self) -> Option<u32> {
        match self {
            Computed::Chi(c) => c.chi.exact(),
            Computed::Alpha(a) => Some(a.alpha as u32),
        }
    }
}

impl fmt::Display for Computed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Computed::Chi(c) => write!(f, "{}", c.chi),
            Computed::Alpha(a) => write!(f, "{}", a.alpha),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCheck {
    pub scheme: String,
    pub palette: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuckerCheck {
    pub scheme: LabelScheme,
    pub coloring_proper: bool,
    pub conditions_hold: bool,
    pub range_ok: bool,
    pub max_abs_label: u32,
    pub range_m: u32,
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StCheck {
    pub valid: bool,
    pub round_trip: bool,
    pub properties_hold: bool,
    pub parts: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub n: u32,
    pub svec: Vec<u32>,
    pub chi: ChiValue,
    pub elapsed_ms: f64,
}

/// Secondary checks run alongside the main computation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    /// Why the claim does not apply.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub precondition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub construction: Option<ConstructionCheck>,
    /// The certificate (coloring or independent set) re-validated.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mod_condition: Option<ModCondition>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tucker: Option<TuckerCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub st_partition: Option<StCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub butterfly_free: Option<bool>,
    /// An induced butterfly found in the graph.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub butterfly: Option<[usize; 5]>,
    /// Whether the `r` translated vertices `{i, s_1+i, ...}` form a hyperedge.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub translated_hyperedge: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<ReferenceCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub key: String,
    pub spec: InstanceSpec,
    pub expected: Expected,
    pub computed: Computed,
    pub verdict: Verdict,
    pub artifacts: Vec<String>,
    pub checks: Checks,
    pub elapsed_ms: f64,
}

impl VerdictRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Copy with every timing zeroed, for byte-stable output.
    pub fn canonical(&self) -> VerdictRecord {
        let mut r = self.clone();
        r.elapsed_ms = 0.0;
        if let Computed::Chi(c) = &mut r.computed {
            c.elapsed_ms = 0.0;
            for d in &mut c.decisions {
                d.elapsed_ms = 0.0;
            }
        }
        if let Some(reference) = &mut r.checks.reference {
            reference.elapsed_ms = 0.0;
        }
        r
    }

    /// Rebuilds the instance and re-validates the certificate; for a value
    /// verdict the certificate size must equal the expected value.
    pub fn revalidate(&self) -> Result<bool> {
        match (&self.computed, self.spec.family) {
            (Computed::Alpha(a), Family::WGraph) => {
                let g = build_w_graph(self.spec.n, self.spec.svec[0], self.spec.svec[1]);
                let size_ok = self.expected.value().is_none_or(|e| e as usize == a.alpha);
                Ok(a.witness.len() == a.alpha && g.is_independent(&a.witness) && size_ok)
            }
            (Computed::Chi(c), Family::UniformStable | Family::VectorStable) => {
                let h = self.spec.build()?;
                let Some(cert) = &c.certificate else {
                    return Ok(h.vertex_count() == 0);
                };
                let v = validate_coloring(&h, cert)?;
                let palette_ok = match (c.chi, self.verdict) {
                    (ChiValue::Exact(x), _) => cert.palette_size() == x,
                    _ => true,
                };
                let expected_ok = match self.verdict {
                    Verdict::Match | Verdict::ConjectureConsistent => {
                        self.expected.value().is_none_or(|e| cert.palette_size() == e)
                    }
                    _ => true,
                };
                Ok(v.proper && palette_ok && expected_ok)
            }
            _ => arg("computed value does not fit the instance family"),
        }
    }
}

/// Expected value for a spec, or the precondition that failed.
pub fn expected_value(spec: &InstanceSpec) -> std::result::Result<u32, String> {
    let (n, k, r, s) = (spec.n, spec.k, spec.r, spec.svec.as_slice());
    let need = |ok: bool, why: &str| if ok { Ok(()) } else { Err(why.to_string()) };
    let value = |v: Option<u32>, why: &str| v.ok_or_else(|| why.to_string());
    let uniform = spec.family == Family::UniformStable;
    let graph_vector = spec.family != Family::WGraph && r == 2;
    match spec.claim {
        Claim::Schrijver => {
            need(uniform && r == 2 && s[0] == 2, "needs the 2-stable graph family")?;
            value(formula_schrijver(n, k), "needs n >= 2k")
        }
        Claim::RStableConjecture => {
            need(uniform && s[0] == r, "needs uniform stability s = r")?;
            value(formula_meunier(n, k, r, r), "needs n >= rk")
        }
        Claim::StableConjecture => {
            need(uniform, "needs uniform stability")?;
            value(formula_meunier(n, k, r, s[0]), "needs r, s >= 2 and n >= max{r,s} k")
        }
        Claim::PowerOfTwoStable => {
            need(uniform && r >= 4 && r.is_power_of_two(), "needs uniform stability and r = 2^{m+1}, m >= 1")?;
            let m_exp = r.trailing_zeros() - 1;
            need(s[0] == 3 << m_exp, "needs s = 3 * 2^m")?;
            let c = main1_mod_condition(n, k, m_exp).map_err(|e| e.to_string())?;
            need(k == 2 || c.theorem_set, "residue outside the stated set and k != 2")?;
            value(formula_meunier(n, k, r, s[0]), "needs n >= s k")
        }
        Claim::Kg4SixStable => {
            need(uniform && r == 4 && s[0] == 6, "needs KG^4(n,k) with uniform stability 6")?;
            need(n >= 6 * k, "needs n >= 6k")?;
            need(n % 3 == 0 || k == 2, "needs 3 | n or k = 2")?;
            value(formula_meunier(n, k, 4, 6), "needs n >= 6k")
        }
        Claim::Kg4FiveStableK2 => {
            need(uniform && r == 4 && s[0] == 5 && k == 2, "needs KG^4(n,2) with uniform stability 5")?;
            need(n >= 10 && n % 3 != 0, "needs n >= 10 and 3 ∤ n")?;
            value(formula_meunier(n, 2, 4, 5), "needs n >= 10")
        }
        Claim::VectorSmallLast => {
            need(graph_vector, "needs r = 2")?;
            value(formula_small_last(n, k, s), "needs s_i >= 2 (i < k), s_k in {1,2}, n >= sum_{i<k} s_i + 2")
        }
        Claim::VectorMinExcess => {
            need(graph_vector, "needs r = 2")?;
            value(
                formula_thm_main2(n, k, s),
                "needs k >= 2, s_i >= 2 (i < k), s_k <= 2m, n >= sum s_i, and m = 2 or even heads",
            )
        }
        Claim::VectorConjecture => {
            need(graph_vector, "needs r = 2")?;
            value(formula_min_excess(n, s), "needs k >= 2, s_i >= 2 (i < k), s_k <= 2m, n >= sum s_i")
        }
        Claim::VectorK2WideLast => {
            need(graph_vector && k == 2, "needs r = 2 and k = 2")?;
            need(n >= s[0] + s[1], "needs n >= s_1 + s_2 (otherwise the graph is null)")?;
            value(formula_thm_main3(n, s[0], s[1]), "needs 2 s_1 <= s_2 <= 3 s_1 and n >= 2 s_2 - 2")
        }
        Claim::VectorStretched => {
            need(spec.family != Family::WGraph, "needs a hypergraph family")?;
            let (m_exp, base) = unstretch(s).ok_or("needs a vector (s_i 2^m, ..., 2^{m+1})")?;
            need(r == 2 << m_exp, "needs r = 2^{m+1}")?;
            value(
                formula_thm_vecstable(n, k, m_exp, &base),
                "needs k >= 2, base s_i >= 2 and n >= 2^m (sum_{i<k} s_i + 2)",
            )
        }
        Claim::LastEntryShift => {
            shift_reference(spec)?;
            Err("expected value comes from the reference instance".into())
        }
        Claim::WGraphAlpha => {
            need(spec.family == Family::WGraph, "needs the w-graph family")?;
            value(formula_w_alpha(n, s[0], s[1]), "needs s_2 >= 2 s_1 and n >= 2 s_2 - 2")
        }
        Claim::None => Err("no claim".into()),
    }
}

/// `(n - e, (s_1, ..., s_{k-1}, m))` for a vector ending in `m + e`, `0 < e <= m`.
fn shift_reference(spec: &InstanceSpec) -> std::result::Result<(u32, Vec<u32>), String> {
    let s = &spec.svec;
    if spec.family == Family::WGraph || spec.r != 2 || s.len() < 2 {
        return Err("needs r = 2 and k >= 2".into());
    }
    let heads = &s[..s.len() - 1];
    if heads.iter().any(|&x| x < 2) {
        return Err("needs s_i >= 2 for i < k".into());
    }
    let m = *heads.iter().min().expect("k >= 2");
    let last = s[s.len() - 1];
    if last <= m || last > 2 * m {
        return Err("needs m < s_k <= 2m".into());
    }
    if spec.n < s.iter().sum::<u32>() {
        return Err("needs n >= sum s_i".into());
    }
    let mut reference = s.clone();
    *reference.last_mut().expect("k >= 2") = m;
    Ok((spec.n - (last - m), reference))
}

/// Options for [`run_instance`] and [`sweep`].
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Per-decision budget; `None` runs to completion.
    pub budget: Option<Duration>,
    /// Where certificates are written; `None` keeps them inline only.
    pub artifact_dir: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { budget: SolveOptions::default().decision_budget, artifact_dir: None }
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn solve(h: &Hypergraph, opts: &RunOptions) -> (ChiResult, Option<ConstructionCheck>) {
    let hint = (h.vertex_count() > 0).then(|| best_construction(h).ok()).flatten();
    let construction =
        hint.as_ref().map(|c| ConstructionCheck { scheme: c.scheme.name().into(), palette: c.coloring.palette_size() });
    let solve_opts = SolveOptions { decision_budget: opts.budget };
    (chromatic_number_with(h, hint.as_ref().map(|c| &c.coloring), &solve_opts), construction)
}

fn write_artifact(dir: &Path, name: &str, body: &serde_json::Value) -> Result<String> {
    fs::create_dir_all(dir).map_err(|e| Error::State(format!("creating {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(body).expect("artifact serializes"))
        .map_err(|e| Error::State(format!("writing {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn tucker_check(h: &Hypergraph, c: &Coloring) -> Option<TuckerCheck> {
    let s = h.svec().as_slice();
    let k = s.len();
    if h.r() != 2 || k < 2 || h.n() > VERIFY_CAP {
        return None;
    }
    let m = *s[..k - 1].iter().min()?;
    if s[..k - 1].iter().any(|x| x % 2 != 0) || s[k - 1] > m {
        return None;
    }
    let scheme = LabelScheme::ShiftedThreshold;
    let lambda = build_lambda_with(h.n(), h.svec(), c, scheme).ok()?;
    let report = verify_tucker_conditions(&lambda).ok()?;
    Some(TuckerCheck {
        scheme,
        coloring_proper: report.coloring_proper,
        conditions_hold: report.conditions_hold(),
        range_ok: report.range_ok,
        max_abs_label: report.max_abs_label,
        range_m: report.range_m,
        bound: report.bound,
    })
}

fn st_check(h: &Hypergraph, c: &Coloring) -> StCheck {
    let w = build_w_graph(h.n(), h.svec().as_slice()[0], h.svec().as_slice()[1]);
    let failed = |e: Error| StCheck { valid: false, round_trip: false, properties_hold: false, parts: 0, error: Some(e.to_string()) };
    let p = match coloring_to_st_partition(h, c) {
        Ok(p) => p,
        Err(e) => return failed(e),
    };
    let valid = p.validate(&w).is_ok();
    let round_trip = st_partition_to_coloring(h, &p).is_ok_and(|back| same_partition(&back, c));
    let properties_hold = check_st_properties(&p, &w).is_ok_and(|r| r.holds());
    StCheck { valid, round_trip, properties_hold, parts: p.parts.len(), error: None }
}

fn same_partition(a: &Coloring, b: &Coloring) -> bool {
    let sorted = |c: &Coloring| {
        let mut cl = c.classes();
        cl.sort();
        cl
    };
    a.len() == b.len() && sorted(a) == sorted(b)
}

fn translated_hyperedge(h: &Hypergraph) -> Option<bool> {
    let sets = translated_vertices(h.n(), h.r(), h.svec())?;
    Some(sets.iter().all(|&v| h.index_of(v).is_some()) && are_pairwise_disjoint(&sets))
}

fn verdict_for(claim: Claim, expected: Expected, computed: Option<u32>, indeterminate: bool, cert_ok: bool) -> Verdict {
    if indeterminate {
        return Verdict::Indeterminate;
    }
    let Expected::Value(e) = expected else {
        return Verdict::NotApplicable;
    };
    let agrees = computed == Some(e) && cert_ok;
    match (claim.kind(), agrees) {
        (ClaimKind::Conjecture, true) => Verdict::ConjectureConsistent,
        (ClaimKind::Conjecture, false) => Verdict::ConjectureInconsistent,
        (_, true) => Verdict::Match,
        (_, false) => Verdict::Mismatch,
    }
}

/// Builds the instance, evaluates the claim, solves exactly and records the
/// verdict with its secondary checks.
pub fn run_instance(spec: &InstanceSpec, opts: &RunOptions) -> Result<VerdictRecord> {
    let start = Instant::now();
    spec.validate()?;
    let key = spec.key();
    let mut checks = Checks::default();
    let mut artifacts = Vec::new();
    let mut expected = match expected_value(spec) {
        Ok(v) => Expected::Value(v),
        Err(why) => {
            checks.precondition = Some(why);
            Expected::NotApplicable
        }
    };
    if spec.r >= 4 && spec.r.is_power_of_two() && spec.family == Family::UniformStable {
        let m_exp = spec.r.trailing_zeros() - 1;
        if spec.svec[0] == 3 << m_exp {
            checks.mod_condition = main1_mod_condition(spec.n, spec.k, m_exp).ok();
        }
    }

    if spec.family == Family::WGraph {
        let g = build_w_graph(spec.n, spec.svec[0], spec.svec[1]);
        let alpha = independence_number(&g);
        let cert_ok = g.is_independent(&alpha.witness);
        checks.certificate_valid = Some(cert_ok);
        checks.butterfly = is_butterfly_free(&g);
        checks.butterfly_free = Some(checks.butterfly.is_none());
        if let Some(dir) = &opts.artifact_dir {
            let body = serde_json::json!({ "spec": spec, "independent_set": alpha.witness });
            artifacts.push(write_artifact(dir, &format!("{key}.independent-set.json"), &body)?);
        }
        let verdict = verdict_for(spec.claim, expected, Some(alpha.alpha as u32), false, cert_ok);
        return Ok(VerdictRecord {
            key,
            spec: spec.clone(),
            expected,
            computed: Computed::Alpha(alpha),
            verdict,
            artifacts,
            checks,
            elapsed_ms: ms(start.elapsed()),
        });
    }

    let h = spec.build()?;
    let (chi, construction) = solve(&h, opts);
    checks.construction = construction;
    checks.translated_hyperedge = translated_hyperedge(&h);
    let mut indeterminate = matches!(chi.chi, ChiValue::Indeterminate { .. });
    let cert_ok = match &chi.certificate {
        Some(c) => {
            let ok = validate_coloring(&h, c).is_ok_and(|v| v.proper)
                && chi.chi.exact().is_none_or(|x| x == c.palette_size());
            checks.certificate_valid = Some(ok);
            if let Some(dir) = &opts.artifact_dir {
                let vertices: Vec<Vec<u32>> = h.vertices().iter().map(|v| v.elements()).collect();
                let body = serde_json::json!({ "spec": spec, "vertices": vertices, "coloring": c });
                artifacts.push(write_artifact(dir, &format!("{key}.coloring.json"), &body)?);
            }
            if chi.chi.exact().is_some() {
                checks.tucker = tucker_check(&h, c);
                if spec.r == 2 && spec.k == 2 {
                    checks.st_partition = Some(st_check(&h, c));
                }
            }
            ok
        }
        None => true,
    };

    if spec.claim == Claim::LastEntryShift {
        if let Ok((n_ref, s_ref)) = shift_reference(spec) {
            let reference = InstanceSpec::vector(n_ref, 2, &s_ref, Claim::None);
            let (ref_chi, _) = solve(&reference.build()?, opts);
            match ref_chi.chi {
                ChiValue::Exact(v) => {
                    expected = Expected::Value(v);
                    checks.precondition = None;
                }
                ChiValue::Indeterminate { .. } => indeterminate = true,
                ChiValue::NegInfinity => {}
            }
            checks.reference =
                Some(ReferenceCheck { n: n_ref, svec: s_ref, chi: ref_chi.chi, elapsed_ms: ref_chi.elapsed_ms });
        }
    }

    let verdict = verdict_for(spec.claim, expected, chi.chi.exact(), indeterminate, cert_ok);
    Ok(VerdictRecord {
        key,
        spec: spec.clone(),
        expected,
        computed: Computed::Chi(chi),
        verdict,
        artifacts,
        checks,
        elapsed_ms: ms(start.elapsed()),
    })
}

/// Options for [`sweep`].
#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub run: RunOptions,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Append-only NDJSON log; instances whose key is already logged are
    /// not recomputed.
    pub log: Option<PathBuf>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { run: RunOptions::default(), jobs: 1, log: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    /// One record per input spec, in input order.
    pub records: Vec<VerdictRecord>,
    pub counts: BTreeMap<Verdict, usize>,
    /// Records taken from the log instead of recomputed.
    pub cached: usize,
}

impl SweepReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    /// Summary CSV: spec fields, expected, computed, verdict, ms.
    pub fn to_csv(&self, with_timings: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["key", "family", "n", "k", "r", "svec", "claim", "expected", "computed", "verdict"];
        if with_timings {
            header.push("ms");
        }
        w.write_record(&header).expect("csv header");
        for rec in &self.records {
            let s = &rec.spec;
            let family = serde_json::to_value(s.family).expect("family serializes");
            let mut row = vec![
                rec.key.clone(),
                family.as_str().unwrap_or_default().to_string(),
                s.n.to_string(),
                s.k.to_string(),
                s.r.to_string(),
                s.svec_text(),
                s.claim.id().to_string(),
                rec.expected.to_string(),
                rec.computed.to_string(),
                rec.verdict.to_string(),
            ];
            if with_timings {
                row.push(format!("{:.1}", rec.elapsed_ms));
            }
            w.write_record(&row).expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
    }
}

/// Reads the records of an NDJSON log, keyed by spec key (last one wins).
pub fn read_log(path: &Path) -> Result<HashMap<String, VerdictRecord>> {
    let mut out = HashMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(Error::State(format!("reading {}: {e}", path.display()))),
    };
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::State(format!("reading {}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: VerdictRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Argument(format!("{}:{}: bad record: {e}", path.display(), i + 1)))?;
        out.insert(rec.key.clone(), rec);
    }
    Ok(out)
}

/// Runs every spec (in parallel when `jobs > 1`) and returns the records in
/// input order; indeterminate records are recomputed on later sweeps.
pub fn sweep(specs: &[InstanceSpec], opts: &SweepOptions) -> Result<SweepReport> {
    for s in specs {
        s.validate()?;
    }
    let cache = match &opts.log {
        Some(p) => read_log(p)?,
        None => HashMap::new(),
    };
    let reusable = |s: &InstanceSpec| cache.get(&s.key()).filter(|r| r.verdict != Verdict::Indeterminate && r.spec == *s);
    let mut todo: Vec<&InstanceSpec> = Vec::new();
    for s in specs {
        if reusable(s).is_none() && !todo.contains(&s) {
            todo.push(s);
        }
    }
    let log = match &opts.log {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| Error::State(format!("creating {}: {e}", dir.display())))?;
            }
            let f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(|e| Error::State(format!("opening {}: {e}", p.display())))?;
            Some(Mutex::new(f))
        }
        None => None,
    };
    let run_one = |s: &InstanceSpec| -> Result<VerdictRecord> {
        let rec = run_instance(s, &opts.run)?;
        if let Some(f) = &log {
            let mut f = f.lock().expect("log lock");
            writeln!(f, "{}", rec.to_json()).map_err(|e| Error::State(format!("appending to log: {e}")))?;
        }
        Ok(rec)
    };
    let fresh: Vec<Result<VerdictRecord>> = if opts.jobs == 1 {
        todo.iter().map(|s| run_one(s)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::State(format!("thread pool: {e}")))?;
        pool.install(|| todo.par_iter().map(|s| run_one(s)).collect())
    };
    let mut by_key: HashMap<String, VerdictRecord> = HashMap::new();
    for r in fresh {
        let r = r?;
        by_key.insert(r.key.clone(), r);
    }
    let mut records = Vec::with_capacity(specs.len());
    let mut counts = BTreeMap::new();
    let mut cached = 0;
    for s in specs {
        let rec = match by_key.get(&s.key()) {
            Some(r) => r.clone(),
            None => {
                cached += 1;
                reusable(s).expect("either cached or computed").clone()
            }
        };
        *counts.entry(rec.verdict).or_insert(0) += 1;
        records.push(rec);
    }
    Ok(SweepReport { records, counts, cached })
}
