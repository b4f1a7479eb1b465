//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every value is compared against a formula written out here, every
//! certificate is rechecked by the brute-force oracles below, and every
//! criterion has a pinned wall-clock limit. The process exits nonzero when a
//! criterion fails, except for ids in `KNOWN_FAILURES`: those are reported as
//! FAIL, and the counterexamples behind them are re-verified by the oracles.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use stable_kneser::coloring::{afl_min_block_coloring, afl_palette_bound, block_coloring, interval_coloring, Coloring};
use stable_kneser::harness::formulas::{main1_mod_condition, residue_set_report};
use stable_kneser::solver::{chromatic_number_with, independence_number, ChiValue, SolveOptions};
use stable_kneser::tucker::{build_lambda, build_lambda_with, verify_tucker_conditions, LabelFunction, LabelScheme, SignedSet};
use stable_kneser::wgraph::{build_w_graph, coloring_to_st_partition, is_butterfly_free, PartKind};
use stable_kneser::{build_kneser, build_stable_kneser, Hypergraph, KSubset, StabilityVector};

/// Per-decision budget of the exact solver.
const BUDGET: Duration = Duration::from_secs(600);

/// Induced butterflies exist in W(n, s1, s2) for some grid points.
const KNOWN_FAILURES: &[&str] = &["7b"];

type Check = std::result::Result<String, String>;

// ---- oracles ----

fn mask_of(v: &[u32]) -> u64 {
    v.iter().fold(0, |m, &e| m | 1 << (e - 1))
}

/// `a_{j+1} - a_j >= s_j` for `j < k` and `a_k - a_1 <= n - s_k`.
fn oracle_stable(a: &[u32], n: u32, s: &[u32]) -> bool {
    let k = a.len();
    (0..k - 1).all(|j| a[j + 1] - a[j] >= s[j]) && a[k - 1] - a[0] + s[k - 1] <= n
}

fn oracle_vertices(n: u32, s: &[u32]) -> BTreeSet<u64> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == s.len())
        .filter(|&m| {
            let a: Vec<u32> = (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect();
            oracle_stable(&a, n, s)
        })
        .collect()
}

fn vertex_masks(h: &Hypergraph) -> Vec<u64> {
    h.vertices().iter().map(|v| mask_of(&v.elements())).collect()
}

fn same_vertex_set(h: &Hypergraph, s: &[u32]) -> bool {
    let got: BTreeSet<u64> = vertex_masks(h).into_iter().collect();
    got.len() == h.vertex_count() && got == oracle_vertices(h.n(), s)
}

/// True iff `sets` contains `r` pairwise disjoint members.
fn has_disjoint(sets: &[u64], r: u32, used: u64, from: usize) -> bool {
    if r == 0 {
        return true;
    }
    (from..sets.len()).any(|i| sets[i] & used == 0 && has_disjoint(sets, r - 1, used | sets[i], i + 1))
}

/// Proper iff no color class holds `r` pairwise disjoint vertices.
fn oracle_proper(h: &Hypergraph, colors: &[u32]) -> bool {
    let masks = vertex_masks(h);
    if colors.len() != masks.len() || colors.contains(&0) {
        return false;
    }
    let top = colors.iter().copied().max().unwrap_or(0);
    (1..=top).all(|c| {
        let class: Vec<u64> = masks.iter().zip(colors).filter(|(_, &x)| x == c).map(|(&m, _)| m).collect();
        !has_disjoint(&class, h.r(), 0, 0)
    })
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

fn solve(h: &Hypergraph) -> stable_kneser::ChiResult {
    chromatic_number_with(h, None, &SolveOptions { decision_budget: Some(BUDGET) })
}

/// Solves `KG^r(n, k)_s` and checks the value and its certificate.
fn chi_equals(n: u32, r: u32, s: &[u32], expected: u32) -> std::result::Result<(), String> {
    let name = format!("KG^{r}({n},{})_{s:?}", s.len());
    let svec = StabilityVector::new(s.to_vec()).map_err(|e| e.to_string())?;
    let h = build_stable_kneser(n, s.len() as u32, r, &svec).map_err(|e| e.to_string())?;
    if !same_vertex_set(&h, s) {
        return Err(format!("{name}: vertex set differs from the enumeration"));
    }
    let res = solve(&h);
    if res.chi != ChiValue::Exact(expected) {
        return Err(format!("{name}: chi = {}, expected {expected}", res.chi));
    }
    let colors = res.certificate.map(|c| c.assignment().to_vec()).unwrap_or_default();
    if !oracle_proper(&h, &colors) || distinct(&colors) != expected as usize {
        return Err(format!("{name}: certificate is not a proper {expected}-coloring"));
    }
    Ok(())
}

fn all_chi(cases: &[(u32, u32, Vec<u32>, u32)]) -> Check {
    let bad: Vec<String> = cases.iter().filter_map(|(n, r, s, e)| chi_equals(*n, *r, s, *e).err()).collect();
    if bad.is_empty() {
        Ok(format!("{} instances match, certificates proper", cases.len()))
    } else {
        Err(format!("{} of {} failed: {}", bad.len(), cases.len(), bad.join("; ")))
    }
}

/// Adjacency of W(n, s1, s2) on 1-based vertices.
fn w_adjacent(i: u32, j: u32, n: u32, s1: u32, s2: u32) -> bool {
    let (a, b) = (i.min(j), i.max(j));
    a != b && b - a >= s1 && b - a + s2 <= n
}

fn oracle_alpha(n: u32, s1: u32, s2: u32) -> u32 {
    fn go(cand: &[u32], n: u32, s1: u32, s2: u32) -> u32 {
        let Some((&v, rest)) = cand.split_first() else { return 0 };
        let keep: Vec<u32> = rest.iter().copied().filter(|&u| !w_adjacent(u, v, n, s1, s2)).collect();
        (1 + go(&keep, n, s1, s2)).max(go(rest, n, s1, s2))
    }
    go(&(1..=n).collect::<Vec<_>>(), n, s1, s2)
}

/// Centre `c` and wings `{a, b}`, `{d, e}`: two triangles through `c` and no
/// other edges among the five.
fn oracle_is_butterfly(c: u32, w: [u32; 4], adj: &dyn Fn(u32, u32) -> bool) -> bool {
    let [a, b, d, e] = w;
    w.iter().all(|&x| adj(c, x))
        && adj(a, b)
        && adj(d, e)
        && [a, b].iter().all(|&x| [d, e].iter().all(|&y| !adj(x, y)))
}

fn oracle_find_butterfly(n: u32, s1: u32, s2: u32) -> Option<(u32, [u32; 4])> {
    let adj = |i, j| w_adjacent(i, j, n, s1, s2);
    for c in 1..=n {
        let nb: Vec<u32> = (1..=n).filter(|&x| adj(c, x)).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                for (j, &d) in nb.iter().enumerate() {
                    for &e in &nb[j + 1..] {
                        if [a, b].iter().all(|x| ![d, e].contains(x)) && oracle_is_butterfly(c, [a, b, d, e], &adj) {
                            return Some((c, [a, b, d, e]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Labels of every signed set, indexed by `plus << n | minus`.
fn label_table(l: &LabelFunction) -> std::result::Result<Vec<i32>, String> {
    let n = l.n();
    let mut t = vec![0i32; 1 << (2 * n)];
    for plus in 0u64..1 << n {
        let rest = !plus & ((1 << n) - 1);
        let mut minus = rest;
        loop {
            if plus | minus != 0 {
                let a = SignedSet::from_masks(n, plus, minus).map_err(|e| e.to_string())?;
                t[(plus << n | minus) as usize] = l.evaluate(&a).map_err(|e| e.to_string())?;
            }
            if minus == 0 {
                break;
            }
            minus = (minus - 1) & rest;
        }
    }
    Ok(t)
}

/// Antipodal and monotone violation counts over all signed sets, plus the
/// largest label magnitude.
fn oracle_tucker(l: &LabelFunction) -> std::result::Result<(u64, u64, u32), String> {
    let n = l.n();
    let t = label_table(l)?;
    let idx = |p: u64, m: u64| (p << n | m) as usize;
    let (mut antipodal, mut monotone, mut top) = (0u64, 0u64, 0u32);
    for plus in 0u64..1 << n {
        let rest = !plus & ((1 << n) - 1);
        let mut minus = rest;
        loop {
            if plus | minus != 0 {
                let v = t[idx(plus, minus)];
                top = top.max(v.unsigned_abs());
                if v == 0 || t[idx(minus, plus)] != -v {
                    antipodal += 1;
                }
                let supp = plus | minus;
                let mut sub = supp;
                while sub != 0 {
                    if sub != supp && t[idx(plus & sub, minus & sub)] + v == 0 {
                        monotone += 1;
                    }
                    sub = (sub - 1) & supp;
                }
            }
            if minus == 0 {
                break;
            }
            minus = (minus - 1) & rest;
        }
    }
    Ok((antipodal, monotone, top))
}

fn ceil_div(a: i64, d: i64) -> i64 {
    -((-a).div_euclid(d))
}

// ---- criteria ----

fn c1() -> Check {
    all_chi(&(4..=10).map(|n| (n, 2, vec![2, 2], n - 2)).collect::<Vec<_>>())
}

fn c2() -> Check {
    all_chi(&(12..=16u32).map(|n| (n, 4, vec![6, 6], (n - 6).div_ceil(3))).collect::<Vec<_>>())
}

fn c3() -> Check {
    all_chi(&[10u32, 11, 13, 14].map(|n| (n, 4, vec![5, 5], (n - 5).div_ceil(3))))
}

fn c4() -> Check {
    let mut cases = Vec::new();
    let mut null = Vec::new();
    for s1 in 1..=2u32 {
        for s2 in 2 * s1..=3 * s1 {
            for n in 2 * s2 - 2..=14 {
                if n < s1 + s2 {
                    null.push((n, s1, s2));
                } else {
                    cases.push((n, 2, vec![s1, s2], n - 2 * s1));
                }
            }
        }
    }
    for &(n, s1, s2) in &null {
        let h = build_stable_kneser(n, 2, 2, &StabilityVector::new(vec![s1, s2]).unwrap()).unwrap();
        if h.vertex_count() != 0 || solve(&h).chi != ChiValue::NegInfinity {
            return Err(format!("KG^2({n},2)_({s1},{s2}) expected to be the null graph"));
        }
    }
    all_chi(&cases).map(|d| format!("{d}; null graphs with chi = -inf excluded: {null:?}"))
}

/// `(s_1, ..., s_k)` with `k in {2, 3}`, `2 <= s_i <= 4` for `i < k`,
/// `m = 2` or every head entry even, and `1 <= s_k <= min(4, 2m)`.
fn min_excess_grid() -> Vec<Vec<u32>> {
    let mut heads: Vec<Vec<u32>> = (2..=4).map(|a| vec![a]).collect();
    heads.extend((2..=4).flat_map(|a| (2..=4).map(move |b| vec![a, b])));
    let mut out = Vec::new();
    for h in heads {
        let m = *h.iter().min().unwrap();
        if m != 2 && h.iter().any(|x| x % 2 == 1) {
            continue;
        }
        for last in 1..=4.min(2 * m) {
            out.push([h.clone(), vec![last]].concat());
        }
    }
    out
}

fn min_excess_value(n: u32, s: &[u32]) -> u32 {
    let head = &s[..s.len() - 1];
    let m = *head.iter().min().unwrap();
    n - head.iter().sum::<u32>() - s[s.len() - 1].saturating_sub(m)
}

fn c5() -> Check {
    let mut cases = Vec::new();
    for s in min_excess_grid() {
        for n in s.iter().sum::<u32>()..=12 {
            cases.push((n, 2, s.clone(), min_excess_value(n, &s)));
        }
    }
    all_chi(&cases)
}

fn c6() -> Check {
    let svec = StabilityVector::new(vec![1, 4]).unwrap();
    let h = build_stable_kneser(6, 2, 2, &svec).unwrap();
    if !same_vertex_set(&h, &[1, 4]) || h.vertex_count() != 9 {
        return Err("vertex set of KG^2(6,2)_(1,4) is wrong".into());
    }
    let classes: [&[[u32; 2]]; 3] = [&[[1, 2], [1, 3], [2, 3]], &[[2, 4], [3, 4], [4, 5], [4, 6]], &[[3, 5], [5, 6]]];
    let mut colors = vec![0u32; 9];
    for (c, class) in classes.iter().enumerate() {
        for p in *class {
            let id = h.index_of(KSubset::new(6, p).unwrap()).ok_or(format!("{p:?} is not a vertex"))?;
            colors[id] = c as u32 + 1;
        }
    }
    if !oracle_proper(&h, &colors) {
        return Err("listed classes are not a proper coloring".into());
    }
    let res = solve(&h);
    if res.chi != ChiValue::Exact(3) {
        return Err(format!("chi = {}", res.chi));
    }
    let p = coloring_to_st_partition(&h, &Coloring::new(colors).unwrap()).map_err(|e| e.to_string())?;
    let mut parts: Vec<String> = p
        .parts
        .iter()
        .map(|q| match q.kind {
            PartKind::Triangle => format!("TRIANGLE{:?}", q.corners()),
            PartKind::Star => format!("STAR@{}", q.center.unwrap_or(0)),
        })
        .collect();
    parts.sort();
    if parts != ["STAR@4", "STAR@5", "TRIANGLE[1, 2, 3]"] {
        return Err(format!("ST-partition {parts:?}"));
    }
    let packing = [[1u32, 2], [3, 4], [5, 6]];
    let masks: Vec<u64> = packing.iter().map(|p| mask_of(p)).collect();
    let in_graph = packing.iter().all(|p| oracle_stable(p, 6, &[1, 4]));
    if !in_graph || !has_disjoint(&masks, 3, 0, 0) {
        return Err("packing is not three disjoint vertices".into());
    }
    Ok(format!("chi = 3, classes proper, parts {parts:?}, packing {packing:?} forces 3 colors"))
}

fn w_grid() -> Vec<(u32, u32, u32)> {
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

fn c7a() -> Check {
    let grid = w_grid();
    let mut bad = Vec::new();
    for &(n, s1, s2) in &grid {
        let g = build_w_graph(n, s1, s2);
        let a = independence_number(&g);
        let witness_ok = a.witness.len() == a.alpha
            && a.witness.iter().all(|&u| a.witness.iter().all(|&v| !w_adjacent(u as u32 + 1, v as u32 + 1, n, s1, s2)));
        let brute = oracle_alpha(n, s1, s2);
        if a.alpha as u32 != 2 * s1 || brute != 2 * s1 || !witness_ok {
            bad.push(format!("W({n},{s1},{s2}): alpha {} brute {brute}", a.alpha));
        }
    }
    if bad.is_empty() {
        Ok(format!("alpha = 2 s1 on all {} graphs (brute force agrees)", grid.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn c7b() -> Check {
    let grid = w_grid();
    let mut found = Vec::new();
    let mut disagree = Vec::new();
    for &(n, s1, s2) in &grid {
        let lib = is_butterfly_free(&build_w_graph(n, s1, s2));
        let brute = oracle_find_butterfly(n, s1, s2);
        let adj = |i, j| w_adjacent(i, j, n, s1, s2);
        let lib_ok = lib.is_none_or(|b| {
            let v = b.map(|x| x as u32 + 1);
            oracle_is_butterfly(v[0], [v[1], v[2], v[3], v[4]], &adj)
        });
        if lib.is_some() != brute.is_some() || !lib_ok {
            disagree.push(format!("W({n},{s1},{s2})"));
        }
        if let Some((c, w)) = brute {
            found.push(format!("W({n},{s1},{s2}) centre {c} wings {:?} {:?}", &w[..2], &w[2..]));
        }
    }
    if !disagree.is_empty() {
        return Err(format!("library and brute force disagree on {disagree:?}"));
    }
    if found.is_empty() {
        Ok(format!("no induced butterfly in {} graphs", grid.len()))
    } else {
        Err(format!(
            "induced butterflies in {} of {} graphs, confirmed by brute force; first: {}",
            found.len(),
            grid.len(),
            found[0]
        ))
    }
}

fn merge_first_disjoint_pair(h: &Hypergraph, colors: &[u32]) -> Vec<u32> {
    let masks = vertex_masks(h);
    for u in 0..masks.len() {
        for v in u + 1..masks.len() {
            if masks[u] & masks[v] == 0 && colors[u] != colors[v] {
                let (keep, drop) = (colors[u], colors[v]);
                return colors.iter().map(|&x| if x == drop { keep } else { x }).collect();
            }
        }
    }
    colors.to_vec()
}

fn c8() -> Check {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut published_out_of_range = 0;
    for s in [[2u32, 2], [4, 2]] {
        let svec = StabilityVector::new(s.to_vec()).unwrap();
        for n in s[0] + s[1]..=9 {
            let h = build_stable_kneser(n, 2, 2, &svec).unwrap();
            let res = solve(&h);
            let Some(c) = res.certificate.filter(|_| res.chi == ChiValue::Exact(n - s[0])) else {
                bad.push(format!("n={n} {s:?}: no optimal coloring"));
                continue;
            };
            if !oracle_proper(&h, c.assignment()) {
                bad.push(format!("n={n} {s:?}: certificate improper"));
                continue;
            }
            for scheme in [LabelScheme::Published, LabelScheme::ShiftedThreshold] {
                let l = build_lambda_with(n, &svec, &c, scheme).map_err(|e| e.to_string())?;
                let (anti, mono, top) = oracle_tucker(&l)?;
                let lib = verify_tucker_conditions(&l).map_err(|e| e.to_string())?;
                if anti != 0 || mono != 0 || !lib.conditions_hold() {
                    bad.push(format!("n={n} {s:?} {scheme:?}: {anti} antipodal, {mono} monotone violations"));
                }
                if lib.condition2_violation_count != mono || lib.condition1_violation_count != anti {
                    bad.push(format!("n={n} {s:?} {scheme:?}: violation counts differ from brute force"));
                }
                let in_range = top <= l.range_m();
                match scheme {
                    LabelScheme::ShiftedThreshold if !in_range => bad.push(format!("n={n} {s:?}: label {top} > {}", l.range_m())),
                    LabelScheme::Published if !in_range => published_out_of_range += 1,
                    _ => {}
                }
            }
            checked += 1;
        }
    }
    let svec = StabilityVector::new(vec![2, 2]).unwrap();
    let h = build_stable_kneser(8, 2, 2, &svec).unwrap();
    let c = solve(&h).certificate.ok_or("no certificate for KG^2(8,2)_(2,2)")?;
    let merged = Coloring::new(merge_first_disjoint_pair(&h, c.assignment())).unwrap();
    let l = build_lambda(8, &svec, &merged).map_err(|e| e.to_string())?;
    let (_, mono, _) = oracle_tucker(&l)?;
    let lib = verify_tucker_conditions(&l).map_err(|e| e.to_string())?;
    let witness_ok = lib.condition2_violations.first().is_some_and(|w| {
        w.smaller.precedes(&w.larger)
            && w.smaller_label + w.larger_label == 0
            && l.evaluate(&w.smaller).ok() == Some(w.smaller_label)
            && l.evaluate(&w.larger).ok() == Some(w.larger_label)
    });
    if mono == 0 || !witness_ok {
        bad.push("improper coloring not caught".into());
    }
    if bad.is_empty() {
        Ok(format!(
            "{checked} optimal colorings pass both conditions over all signed sets under both label schemes; \
             published labels exceed the range on {published_out_of_range}; improper coloring gives {mono} violations"
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn c9() -> Check {
    let mut bad = Vec::new();
    let mut count = 0;
    for r in 2..=4u32 {
        for k in 1..=3usize {
            for s in [[1u32, 1, 1], [2, 2, 2], [2, 3, 1], [3, 2, 4], [4, 1, 2], [4, 4, 4]] {
                let s = &s[..k];
                let head: u32 = s[..k - 1].iter().sum();
                for n in s.iter().sum::<u32>()..=12 {
                    let h = build_stable_kneser(n, k as u32, r, &StabilityVector::new(s.to_vec()).unwrap()).unwrap();
                    let c = block_coloring(&h).map_err(|e| e.to_string())?;
                    let t = (n - head).div_ceil(r - 1);
                    count += 1;
                    if !same_vertex_set(&h, s) || !oracle_proper(&h, c.assignment()) || c.assignment().iter().any(|&x| x > t) {
                        bad.push(format!("block KG^{r}({n},{k})_{s:?}"));
                    }
                }
            }
        }
    }
    for s in min_excess_grid() {
        for n in s.iter().sum::<u32>()..=14 {
            let svec = StabilityVector::new(s.clone()).unwrap();
            let h = build_stable_kneser(n, s.len() as u32, 2, &svec).unwrap();
            let c = interval_coloring(n, &svec).map_err(|e| e.to_string())?;
            let t = min_excess_value(n, &s);
            count += 1;
            let exact = distinct(c.assignment()) == t as usize && c.assignment().iter().all(|&x| x <= t);
            if !oracle_proper(&h, c.assignment()) || !exact {
                bad.push(format!("interval KG^2({n},{})_{s:?}", s.len()));
            }
        }
    }
    for r in 2..=4u32 {
        for k in 1..=3u32 {
            for n in r * k..=10 {
                let h = build_kneser(n, k, r).unwrap();
                let c = afl_min_block_coloring(n, k, r).map_err(|e| e.to_string())?;
                let t = afl_palette_bound(n, k, r).map_err(|e| e.to_string())?;
                let full = h.vertex_count() as u64 == binomial(n, k);
                count += 1;
                if t != (n - r * (k - 1)).div_ceil(r - 1) || !full || !oracle_proper(&h, c.assignment()) || c.assignment().iter().any(|&x| x > t) {
                    bad.push(format!("classic KG^{r}({n},{k})"));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{count} colorings proper within their palettes"))
    } else {
        Err(bad.join("; "))
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

fn c10() -> Check {
    let mut notes = Vec::new();
    for check in residue_set_report(4) {
        let m = check.m_exp;
        let p = 1i64 << m;
        let d = 2 * p - 1;
        let mut holds = vec![true; d as usize];
        for x in 0..=10 * d {
            holds[(x % d) as usize] &= ceil_div(x - p, d) == ceil_div(x, d);
        }
        let identity: Vec<u32> = (0..d as u32).filter(|&x| holds[x as usize]).collect();
        let closed: Vec<u32> = (0..d as u32).filter(|&x| x == 0 || (p as u32 + 1..=2 * p as u32 - 2).contains(&x)).collect();
        if identity != closed || check.derived_set != identity || check.identity_set != identity || !check.derived_matches_identity {
            return Err(format!("m={m}: identity set {identity:?}, library derived set {:?}", check.derived_set));
        }
        for k in 1..=3u32 {
            for n in 0..200u32 {
                let rho = (n as i64 - 3 * p * (k as i64 - 1)).rem_euclid(d) as u32;
                let mc = main1_mod_condition(n, k, m).map_err(|e| e.to_string())?;
                if mc.rho != rho || mc.derived_set != identity.contains(&rho) {
                    return Err(format!("m={m} n={n} k={k}: residue {} vs {rho}", mc.rho));
                }
            }
        }
        notes.extend(check.discrepancies);
    }
    Ok(format!("derived set equals the brute-force identity set for m = 1..4; report: {}", notes.join("; ")))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [(&str, &str, Duration, fn() -> Check); 11] = [
        ("1", "chi(KG^2(n,2)_(2,2)) = n - 2, n = 4..10", secs(5), c1),
        ("2", "chi(KG^4(n,2)_(6,6)) = ceil((n-6)/3), n = 12..16", secs(60), c2),
        ("3", "chi(KG^4(n,2)_(5,5)) = ceil((n-5)/3), n in {10,11,13,14}", secs(120), c3),
        ("4", "chi(KG^2(n,2)_(s1,s2)) = n - 2 s1, 2 s1 <= s2 <= 3 s1, s1 <= 2, n <= 14", secs(120), c4),
        ("5", "chi = n - sum_{i<k} s_i - max(0, s_k - m) on the k in {2,3}, n <= 12 grid", secs(600), c5),
        ("6", "KG^2(6,2)_(1,4): chi 3, classes, ST-partition, packing", secs(1), c6),
        ("7a", "alpha(W(n,s1,s2)) = 2 s1 on the grid", secs(30), c7a),
        ("7b", "W(n,s1,s2) has no induced butterfly on the grid", secs(30), c7b),
        ("8", "Tucker conditions for optimal colorings, n <= 9, and an improper one caught", secs(300), c8),
        ("9", "block, interval and classic colorings proper with their palettes", secs(120), c9),
        ("10", "residue sets against the ceiling identity, m <= 4 (report)", secs(5), c10),
    ];
    let mut unexpected = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if elapsed > limit {
            detail.push_str("; time limit exceeded");
        }
        let passed = ok && elapsed <= limit;
        let known = KNOWN_FAILURES.contains(&id);
        if !passed && !known {
            unexpected += 1;
        }
        let status = if passed { "PASS" } else { "FAIL" };
        let tag = if !passed && known { " [known counterexample]" } else { "" };
        println!("{status} [{id}] {title}{tag}: {detail} ({:.2}s, limit {}s)", elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("acceptance: {unexpected} unexpected failures");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
