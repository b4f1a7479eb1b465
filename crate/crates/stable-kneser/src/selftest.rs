//! Built-in verification suite: reference values, construction properties,
//! Tucker and ST-partition checks, each with a time limit.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::coloring::{afl_min_block_coloring, afl_palette_bound, block_coloring, interval_coloring, validate_coloring, Coloring};
use crate::combinatorics::{are_pairwise_disjoint, KSubset, StabilityVector};
use crate::error::Result;
use crate::harness::formulas::{residue_set_report, translated_vertices};
use crate::harness::grids::{default_grid, min_excess_vectors};
use crate::harness::{sweep, Claim, InstanceSpec, RunOptions, SweepOptions, Verdict};
use crate::hypergraph::{build_kneser, build_stable_kneser, Hypergraph};
use crate::solver::{chromatic_number_with, independence_number, ChiValue, SolveOptions};
use crate::tucker::{build_lambda, build_lambda_with, verify_tucker_conditions, LabelScheme};
use crate::wgraph::{build_w_graph, coloring_to_st_partition, is_butterfly_free, PartKind};

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Per-decision budget of the exact solver.
    pub budget: Option<Duration>,
    pub jobs: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { budget: Some(Duration::from_secs(600)), jobs: 1 }
    }
}

/// One check of the suite.
pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    /// Wall-clock limit; exceeding it fails the check.
    pub limit: Duration,
    /// Informational checks never fail the suite.
    pub informational: bool,
    run: fn(&SelftestOptions) -> Result<(bool, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub informational: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub limit_ms: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let status = match (self.passed, self.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        format!(
            "{status} [{}] {}: {} ({:.2}s, limit {:.0}s)",
            self.id,
            self.title,
            self.detail,
            self.elapsed_ms / 1e3,
            self.limit_ms / 1e3
        )
    }
}

impl Criterion {
    pub fn run(&self, opts: &SelftestOptions) -> CriterionOutcome {
        let start = Instant::now();
        let result = (self.run)(opts);
        let elapsed = start.elapsed();
        let (ok, mut detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        let in_time = elapsed <= self.limit;
        if !in_time {
            detail.push_str("; time limit exceeded");
        }
        CriterionOutcome {
            id: self.id.into(),
            title: self.title.into(),
            passed: ok && in_time,
            informational: self.informational,
            detail,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            limit_ms: self.limit.as_secs_f64() * 1e3,
        }
    }
}

/// All checks, in execution order.
pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    let c = |id, title, limit, run| Criterion { id, title, limit, informational: false, run };
    vec![
        c("1", "2-stable Kneser graphs, k = 2, n = 4..10", secs(5), schrijver_baseline),
        c("2", "KG^4(n,2) with stability 6, n = 12..16", secs(60), kg4_six),
        c("3", "KG^4(n,2) with stability 5, n in {10,11,13,14}", secs(120), kg4_five),
        c("4", "vectors (s1,s2), 2s1 <= s2 <= 3s1, s1 <= 2, n <= 14", secs(120), wide_last),
        c("5", "min-excess formula grid, k in {2,3}, s_i <= 4, n <= 12", secs(600), min_excess),
        c("6", "KG^2(6,2)_(1,4): value, classes, ST-partition, packing", secs(1), small_example),
        c("7a", "independence number of W(n,s1,s2) equals 2 s1", secs(30), w_alpha),
        c("7b", "W(n,s1,s2) has no induced butterfly", secs(30), w_butterfly),
        c("8", "Tucker labeling conditions for optimal colorings, n <= 9", secs(300), tucker_suite),
        c("9", "block, interval and classic colorings are proper within their palettes", secs(120), constructions),
        Criterion {
            id: "10",
            title: "residue sets against the ceiling identity, m <= 4",
            limit: secs(5),
            informational: false,
            run: residue_sets,
        },
        c("11", "chi(n, (s.., m+e)) == chi(n-e, (s.., m)) on a grid", secs(120), last_entry_shift),
        c("12", "translated vertices form a hyperedge when s_i >= r", secs(30), translated),
        c("13", "stretched vectors of power-of-two uniformity", secs(60), stretched),
        c("14", "vectors ending in 1 or 2", secs(60), small_last),
        Criterion {
            id: "15",
            title: "open formulas on small grids (reported only)",
            limit: secs(120),
            informational: true,
            run: conjectures,
        },
    ]
}

fn sweep_claim(specs: &[InstanceSpec], opts: &SelftestOptions) -> Result<(bool, String)> {
    let sw = SweepOptions { run: RunOptions { budget: opts.budget, artifact_dir: None }, jobs: opts.jobs, log: None };
    let rep = sweep(specs, &sw)?;
    let bad: Vec<String> = rep
        .records
        .iter()
        .filter(|r| r.verdict != Verdict::Match || !r.revalidate().unwrap_or(false))
        .map(|r| format!("{} {} (expected {}, computed {})", r.spec, r.verdict, r.expected, r.computed))
        .collect();
    let ok = bad.is_empty();
    let mut detail = format!("{}/{} MATCH", rep.count(Verdict::Match), rep.records.len());
    if !ok {
        detail.push_str(&format!("; {}", bad.join("; ")));
    }
    Ok((ok, detail))
}

fn schrijver_baseline(opts: &SelftestOptions) -> Result<(bool, String)> {
    let specs: Vec<InstanceSpec> = (4..=10).map(|n| InstanceSpec::uniform(n, 2, 2, 2, Claim::Schrijver)).collect();
    sweep_claim(&specs, opts)
}

fn kg4_six(opts: &SelftestOptions) -> Result<(bool, String)> {
    sweep_claim(&default_grid(Claim::Kg4SixStable)?, opts)
}

fn kg4_five(opts: &SelftestOptions) -> Result<(bool, String)> {
    sweep_claim(&default_grid(Claim::Kg4FiveStableK2)?, opts)
}

fn wide_last(opts: &SelftestOptions) -> Result<(bool, String)> {
    let mut specs = default_grid(Claim::VectorK2WideLast)?;
    // (1,2) at n = 2 has no vertices at all.
    specs.retain(|s| s.n >= s.svec.iter().sum());
    let (ok, detail) = sweep_claim(&specs, opts)?;
    Ok((ok, format!("{detail}; null graph (1,2), n = 2 excluded")))
}

fn min_excess(opts: &SelftestOptions) -> Result<(bool, String)> {
    let mut specs = Vec::new();
    for s in min_excess_vectors() {
        for n in s.iter().sum::<u32>()..=12 {
            specs.push(InstanceSpec::vector(n, 2, &s, Claim::VectorMinExcess));
        }
    }
    sweep_claim(&specs, opts)
}

fn pairs(n: u32, list: &[[u32; 2]]) -> Vec<KSubset> {
    list.iter().map(|p| KSubset::new(n, p).expect("pair in range")).collect()
}

fn classes_coloring(h: &Hypergraph, classes: &[&[[u32; 2]]]) -> Option<Coloring> {
    let mut assignment = vec![0; h.vertex_count()];
    for (c, class) in classes.iter().enumerate() {
        for v in pairs(h.n(), class) {
            assignment[h.index_of(v)?] = c as u32 + 1;
        }
    }
    Coloring::new(assignment).ok()
}

fn small_example(opts: &SelftestOptions) -> Result<(bool, String)> {
    let svec = StabilityVector::new(vec![1, 4])?;
    let h = build_stable_kneser(6, 2, 2, &svec)?;
    let chi = chromatic_number_with(&h, None, &SolveOptions { decision_budget: opts.budget });
    let classes: [&[[u32; 2]]; 3] = [&[[1, 2], [1, 3], [2, 3]], &[[2, 4], [3, 4], [4, 5], [4, 6]], &[[3, 5], [5, 6]]];
    let Some(c) = classes_coloring(&h, &classes) else {
        return Ok((false, "listed classes do not cover the vertex set".into()));
    };
    let proper = validate_coloring(&h, &c)?.proper && c.palette_size() == 3;
    let p = coloring_to_st_partition(&h, &c)?;
    let mut parts: Vec<String> = p
        .parts
        .iter()
        .map(|part| match part.kind {
            PartKind::Triangle => format!("TRIANGLE{:?}", part.corners()),
            PartKind::Star => format!("STAR@{}", part.center.unwrap_or(0)),
        })
        .collect();
    parts.sort();
    let st_ok = parts == ["STAR@4", "STAR@5", "TRIANGLE[1, 2, 3]"];
    let packing = pairs(6, &[[1, 2], [3, 4], [5, 6]]);
    let packing_ok = are_pairwise_disjoint(&packing) && packing.iter().all(|&v| h.index_of(v).is_some());
    let ok = chi.chi == ChiValue::Exact(3) && proper && st_ok && packing_ok && h.vertex_count() == 9;
    Ok((ok, format!("chi = {}, classes proper = {proper}, parts = {parts:?}, packing certifies 3 = {packing_ok}", chi.chi)))
}

/// Grid `s_1 <= 3`, `s_2 >= 2 s_1`, `2 s_2 - 2 <= n <= 16`.
pub fn w_grid() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for s1 in 1..=3u32 {
        for s2 in 2 * s1..=9 {
            for n in (2 * s2 - 2).max(2)..=16 {
                out.push((n, s1, s2));
            }
        }
    }
    out
}

fn w_alpha(_: &SelftestOptions) -> Result<(bool, String)> {
    let grid = w_grid();
    let bad: Vec<String> = grid
        .iter()
        .filter_map(|&(n, s1, s2)| {
            let g = build_w_graph(n, s1, s2);
            let a = independence_number(&g);
            (a.alpha as u32 != 2 * s1 || !g.is_independent(&a.witness)).then(|| format!("W({n},{s1},{s2}) alpha = {}", a.alpha))
        })
        .collect();
    Ok((bad.is_empty(), format!("{} graphs; failures {bad:?}", grid.len())))
}

fn w_butterfly(_: &SelftestOptions) -> Result<(bool, String)> {
    let grid = w_grid();
    let found: Vec<String> = grid
        .iter()
        .filter_map(|&(n, s1, s2)| {
            is_butterfly_free(&build_w_graph(n, s1, s2)).map(|b| {
                let v: Vec<usize> = b.iter().map(|x| x + 1).collect();
                format!("W({n},{s1},{s2}) center {} wings {:?} {:?}", v[0], &v[1..3], &v[3..5])
            })
        })
        .collect();
    let in_range = grid
        .iter()
        .filter(|&&(n, s1, s2)| s2 <= 3 * s1 && is_butterfly_free(&build_w_graph(n, s1, s2)).is_some())
        .count();
    let mut detail = format!("{} graphs, {} with an induced butterfly ({in_range} with s2 <= 3 s1)", grid.len(), found.len());
    if let Some(first) = found.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Ok((found.is_empty(), detail))
}

fn tucker_suite(opts: &SelftestOptions) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut published_range_exceeded = 0;
    for s in [[2u32, 2], [4, 2]] {
        let svec = StabilityVector::new(s.to_vec())?;
        for n in s[0] + s[1]..=9 {
            let h = build_stable_kneser(n, 2, 2, &svec)?;
            let chi = chromatic_number_with(&h, None, &SolveOptions { decision_budget: opts.budget });
            let Some(c) = chi.certificate.filter(|_| chi.chi.exact().is_some()) else {
                bad.push(format!("n={n} {svec}: no optimal coloring"));
                continue;
            };
            let published = verify_tucker_conditions(&build_lambda(n, &svec, &c)?)?;
            let shifted = verify_tucker_conditions(&build_lambda_with(n, &svec, &c, LabelScheme::ShiftedThreshold)?)?;
            checked += 1;
            if !published.range_ok {
                published_range_exceeded += 1;
            }
            if !published.conditions_hold() || !shifted.conditions_hold() || !shifted.range_ok {
                bad.push(format!("n={n} {svec}"));
            }
            if shifted.bound != Some(n - s[0]) {
                bad.push(format!("n={n} {svec}: bound {:?}", shifted.bound));
            }
        }
    }
    let svec = StabilityVector::new(vec![2, 2])?;
    let h = build_stable_kneser(8, 2, 2, &svec)?;
    let c = chromatic_number_with(&h, None, &SolveOptions { decision_budget: opts.budget })
        .certificate
        .expect("nonempty graph has a certificate");
    let merged = merge_two_classes(&h, &c);
    let report = verify_tucker_conditions(&build_lambda(8, &svec, &merged)?)?;
    let caught = !report.coloring_proper
        && report.condition2_violations.first().is_some_and(|w| w.smaller.precedes(&w.larger));
    if !caught {
        bad.push("improper coloring not caught".into());
    }
    Ok((
        bad.is_empty(),
        format!(
            "{checked} colorings verified exhaustively, published labels out of range on {published_range_exceeded}; improper coloring caught = {caught}; failures {bad:?}"
        ),
    ))
}

/// Recolors the class of `v` into the class of `u` for the first disjoint
/// pair `u, v` with different colors.
pub fn merge_two_classes(h: &Hypergraph, c: &Coloring) -> Coloring {
    let nv = h.vertex_count();
    let pair = (0..nv)
        .flat_map(|u| (u + 1..nv).map(move |v| (u, v)))
        .find(|&(u, v)| h.vertex(u).is_disjoint(h.vertex(v)) && c.color(u) != c.color(v));
    let Some((u, v)) = pair else { return c.clone() };
    let (keep, drop) = (c.color(u), c.color(v));
    Coloring::new(c.assignment().iter().map(|&x| if x == drop { keep } else { x }).collect()).expect("colors stay positive")
}

fn constructions(_: &SelftestOptions) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut count = 0;
    for r in 2..=4u32 {
        for k in 1..=3usize {
            for s in [[1u32, 1, 1], [2, 2, 2], [2, 3, 1], [3, 2, 4], [4, 1, 2], [4, 4, 4]] {
                let s = &s[..k];
                let svec = StabilityVector::new(s.to_vec())?;
                let head: u32 = s[..k - 1].iter().sum();
                for n in svec.sum()..=12 {
                    let h = build_stable_kneser(n, k as u32, r, &svec)?;
                    let b = block_coloring(&h)?;
                    let t = (n - head).div_ceil(r - 1);
                    count += 1;
                    if !validate_coloring(&h, &b)?.proper || b.assignment().iter().any(|&x| x > t) {
                        bad.push(format!("block KG^{r}({n},{k})_{svec}"));
                    }
                }
            }
        }
    }
    for s in min_excess_vectors().into_iter().chain([vec![1, 1], vec![3, 5], vec![3, 3, 6]]) {
        let svec = StabilityVector::new(s.clone())?;
        let m = *s[..s.len() - 1].iter().min().expect("k >= 2");
        let last = s[s.len() - 1];
        let head = svec.sum_head();
        for n in svec.sum()..=14 {
            let h = build_stable_kneser(n, s.len() as u32, 2, &svec)?;
            let c = interval_coloring(n, &svec)?;
            count += 1;
            if !validate_coloring(&h, &c)?.proper || c.palette_size() != n - head - last.saturating_sub(m) {
                bad.push(format!("interval KG({n},{})_{svec}", s.len()));
            }
        }
    }
    for r in 2..=4u32 {
        for k in 1..=3u32 {
            for n in r * k..=10 {
                let h = build_kneser(n, k, r)?;
                let c = afl_min_block_coloring(n, k, r)?;
                let t = afl_palette_bound(n, k, r)?;
                count += 1;
                if !validate_coloring(&h, &c)?.proper || c.assignment().iter().any(|&x| x > t) {
                    bad.push(format!("classic KG^{r}({n},{k})"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} colorings checked; failures {bad:?}")))
}

fn residue_sets(_: &SelftestOptions) -> Result<(bool, String)> {
    let report = residue_set_report(4);
    let ok = report.iter().all(|c| c.derived_matches_identity);
    let notes: Vec<String> = report.iter().flat_map(|c| c.discrepancies.clone()).collect();
    Ok((ok, format!("derived set equals the identity set for m = 1..4: {ok}; discrepancies: {}", notes.join("; "))))
}

fn last_entry_shift(opts: &SelftestOptions) -> Result<(bool, String)> {
    sweep_claim(&default_grid(Claim::LastEntryShift)?, opts)
}

fn translated(_: &SelftestOptions) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut outside = 0;
    for r in 2..=4u32 {
        for k in 1..=3usize {
            let mut vectors: Vec<Vec<u32>> = vec![vec![]];
            for _ in 0..k {
                vectors = vectors.into_iter().flat_map(|v| (1..=4).map(move |s| [v.clone(), vec![s]].concat())).collect();
            }
            for s in vectors {
                let svec = StabilityVector::new(s.clone())?;
                let hypotheses = s[..k - 1].iter().all(|&x| x >= r);
                for n in (r + svec.sum_head()).max(svec.sum())..=16 {
                    let h = build_stable_kneser(n, k as u32, r, &svec)?;
                    let sets = translated_vertices(n, r, &svec).expect("fits in [n]");
                    let edge = are_pairwise_disjoint(&sets) && sets.iter().all(|&v| h.index_of(v).is_some());
                    if hypotheses {
                        checked += 1;
                        if !edge {
                            bad.push(format!("r={r} n={n} {svec}"));
                        }
                    } else if !edge {
                        outside += 1;
                    }
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{checked} instances with s_i >= r checked; {outside} instances with some s_i < r are not hyperedges; failures {bad:?}"),
    ))
}

fn stretched(opts: &SelftestOptions) -> Result<(bool, String)> {
    sweep_claim(&default_grid(Claim::VectorStretched)?, opts)
}

fn small_last(opts: &SelftestOptions) -> Result<(bool, String)> {
    sweep_claim(&default_grid(Claim::VectorSmallLast)?, opts)
}

fn conjectures(opts: &SelftestOptions) -> Result<(bool, String)> {
    let sw = SweepOptions { run: RunOptions { budget: opts.budget, artifact_dir: None }, jobs: opts.jobs, log: None };
    let mut parts = Vec::new();
    let mut all = true;
    for claim in [Claim::RStableConjecture, Claim::StableConjecture, Claim::VectorConjecture] {
        let rep = sweep(&default_grid(claim)?, &sw)?;
        let inconsistent = rep.count(Verdict::ConjectureInconsistent);
        all &= inconsistent == 0 && rep.count(Verdict::Indeterminate) == 0;
        parts.push(format!("{claim}: {}/{} consistent", rep.count(Verdict::ConjectureConsistent), rep.records.len()));
    }
    Ok((all, parts.join(", ")))
}
