//! Maximum independent sets of graphs and maximum disjoint packings of
//! hypergraph vertices.

use crate::bitset::VertexSet;
use crate::hypergraph::{Graph, Hypergraph};

/// Maximum independent set, lexicographically smallest among those found
/// first by branching on the highest-degree candidate (include, then
/// exclude) with a greedy clique-cover bound.
pub(crate) fn maximum_independent_set(g: &Graph) -> Vec<usize> {
    let nv = g.vertex_count();
    let mut best = Vec::new();
    let mut current = Vec::new();
    branch(g, VertexSet::full(nv), &mut current, &mut best);
    best.sort_unstable();
    best
}

fn branch(g: &Graph, cand: VertexSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + clique_cover_size(g, &cand) <= best.len() {
        return;
    }
    let v = cand
        .iter()
        .max_by_key(|&u| (g.neighbors(u).intersection_count(&cand), std::cmp::Reverse(u)))
        .expect("candidates nonempty");
    if g.neighbors(v).intersection_count(&cand) == 0 {
        current.extend(cand.iter());
        if current.len() > best.len() {
            *best = current.clone();
        }
        current.truncate(current.len() - cand.count());
        return;
    }
    let mut with_v = cand.difference(g.neighbors(v));
    with_v.remove(v);
    current.push(v);
    branch(g, with_v, current, best);
    current.pop();
    let mut without_v = cand;
    without_v.remove(v);
    branch(g, without_v, current, best);
}

/// Number of cliques in a greedy partition of `cand`; bounds the independent
/// sets inside `cand`.
fn clique_cover_size(g: &Graph, cand: &VertexSet) -> usize {
    let mut rest = cand.clone();
    let mut count = 0;
    while let Some(u) = rest.first() {
        rest.remove(u);
        let mut grow = rest.intersection(g.neighbors(u));
        while let Some(w) = grow.first() {
            rest.remove(w);
            grow.remove(w);
            grow.intersect_with(g.neighbors(w));
        }
        count += 1;
    }
    count
}

/// Lexicographically first maximum set of pairwise disjoint vertices.
pub(crate) fn maximum_packing(h: &Hypergraph) -> Vec<usize> {
    let masks: Vec<u64> = h.vertices().iter().map(|v| v.mask()).collect();
    let k = h.k().max(1) as usize;
    let mut best = Vec::new();
    let mut current = Vec::new();
    packing(&masks, k, h.ground_mask(), 0, 0, &mut current, &mut best);
    best
}

fn packing(masks: &[u64], k: usize, ground: u64, start: usize, used: u64, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    let free = (ground & !used).count_ones() as usize;
    if current.len() + free / k <= best.len() {
        return;
    }
    for i in start..masks.len() {
        if masks[i] & used == 0 {
            current.push(i);
            packing(masks, k, ground, i + 1, used | masks[i], current, best);
            current.pop();
            let free = (ground & !used).count_ones() as usize;
            if current.len() + free / k <= best.len() {
                return;
            }
        }
    }
}
