//! The circulant-type graph `W(n, s1, s2)` on `[n]` (i < j adjacent iff
//! `s1 <= j - i <= n - s2`), whose edges are exactly the vertices of
//! `KG(n,2)_(s1,s2)`. Two KG vertices are adjacent iff the corresponding edges
//! share no endpoint, so color classes of KG are sets of pairwise touching
//! edges of W: stars and triangles. A proper coloring is the same thing as a
//! partition of `E(W)` into stars and triangles (an ST-partition).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::combinatorics::{KSubset, StabilityVector};
use crate::error::{arg, Error, Result};
use crate::hypergraph::{build_stable_kneser, Graph, Hypergraph};

/// `W(n, s1, s2)`; graph vertex `i - 1` stands for `i in [n]`.
pub fn build_w_graph(n: u32, s1: u32, s2: u32) -> Graph {
    let mut g = Graph::empty(n as usize);
    for i in 1..=n {
        for j in i + 1..=n {
            if j - i >= s1 && j - i + s2 <= n {
                g.add_edge(i as usize - 1, j as usize - 1);
            }
        }
    }
    g
}

/// Vertex id of `KG(n,2)_(s1,s2)` to edge `(i, j)`, `i < j`, of `W(n,s1,s2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBijection {
    pub n: u32,
    pub s1: u32,
    pub s2: u32,
    edges: Vec<(u32, u32)>,
}

impl EdgeBijection {
    pub fn edge_of(&self, vertex: usize) -> (u32, u32) {
        self.edges[vertex]
    }

    pub fn vertex_of(&self, edge: (u32, u32)) -> Option<usize> {
        let e = (edge.0.min(edge.1), edge.0.max(edge.1));
        self.edges.binary_search(&e).ok()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Pairs the vertices of `KG(n,2)_(s1,s2)` with the edges of `W(n,s1,s2)`
/// and checks that the two sets coincide.
pub fn kneser_edge_bijection(n: u32, s1: u32, s2: u32) -> Result<EdgeBijection> {
    let h = build_stable_kneser(n, 2, 2, &StabilityVector::new(vec![s1, s2])?)?;
    let w = build_w_graph(n, s1, s2);
    let w_edges: Vec<(u32, u32)> = w.edges().into_iter().map(|(u, v)| (u as u32 + 1, v as u32 + 1)).collect();
    let kg_edges: Vec<(u32, u32)> = h
        .vertices()
        .iter()
        .map(|v| (v.min().expect("pair"), v.max().expect("pair")))
        .collect();
    if kg_edges != w_edges {
        return Err(Error::InternalContract(format!(
            "KG({n},2)_({s1},{s2}) has {} vertices but W has {} edges, or they differ",
            kg_edges.len(),
            w_edges.len()
        )));
    }
    Ok(EdgeBijection { n, s1, s2, edges: kg_edges })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PartKind {
    Star,
    Triangle,
}

/// One part of an ST-partition; vertices are elements of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StPart {
    pub kind: PartKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub center: Option<u32>,
    pub edges: Vec<[u32; 2]>,
}

impl StPart {
    pub fn star(center: u32, leaves: &[u32]) -> StPart {
        let edges = leaves.iter().map(|&l| [center.min(l), center.max(l)]).collect();
        StPart { kind: PartKind::Star, center: Some(center), edges }
    }

    pub fn triangle(a: u32, b: u32, c: u32) -> StPart {
        let mut v = [a, b, c];
        v.sort_unstable();
        StPart { kind: PartKind::Triangle, center: None, edges: vec![[v[0], v[1]], [v[0], v[2]], [v[1], v[2]]] }
    }

    /// The three corners of a triangle part.
    pub fn corners(&self) -> Vec<u32> {
        self.edges.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    fn check_shape(&self) -> Result<()> {
        if self.edges.is_empty() {
            return arg("a part needs at least one edge");
        }
        if self.edges.iter().any(|e| e[0] == e[1]) {
            return arg("loops are not edges");
        }
        match self.kind {
            PartKind::Star => {
                let c = self.center.ok_or_else(|| Error::Argument("star without a center".into()))?;
                if self.edges.iter().any(|e| e[0] != c && e[1] != c) {
                    return arg(format!("star edge misses its center {c}"));
                }
            }
            PartKind::Triangle => {
                if self.center.is_some() {
                    return arg("triangles have no center");
                }
                if self.edges.len() != 3 || self.corners().len() != 3 {
                    return arg("a triangle part needs exactly three edges on three vertices");
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StPartition {
    pub parts: Vec<StPart>,
}

impl StPartition {
    /// Checks part shapes and that the parts partition the edge set of `w`.
    pub fn validate(&self, w: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for part in &self.parts {
            part.check_shape()?;
            for e in &part.edges {
                let (u, v) = (e[0].min(e[1]), e[0].max(e[1]));
                if u == 0 || v as usize > w.vertex_count() || !w.has_edge(u as usize - 1, v as usize - 1) {
                    return arg(format!("{u}{v} is not an edge of the graph"));
                }
                if !seen.insert((u, v)) {
                    return arg(format!("edge {u}{v} appears in two parts"));
                }
            }
        }
        if seen.len() != w.edge_count() {
            return arg(format!("parts cover {} of {} edges", seen.len(), w.edge_count()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serializes")
    }
}

fn pair_params(h: &Hypergraph) -> Result<(u32, u32)> {
    if h.k() != 2 || h.r() != 2 {
        return arg("ST-partitions describe colorings of KG(n,2)_(s1,s2) graphs (k = 2, r = 2)");
    }
    let s = h.svec().as_slice();
    Ok((s[0], s[1]))
}

/// Turns each color class of a proper coloring of `KG(n,2)_(s1,s2)` into a
/// star (single edges centered at the lower endpoint) or a triangle.
pub fn coloring_to_st_partition(h: &Hypergraph, c: &Coloring) -> Result<StPartition> {
    pair_params(h)?;
    if c.len() != h.vertex_count() {
        return arg("coloring does not cover the graph");
    }
    let mut parts = Vec::new();
    for class in c.classes() {
        let edges: Vec<[u32; 2]> = class
            .iter()
            .map(|&v| {
                let e = h.vertex(v).elements();
                [e[0], e[1]]
            })
            .collect();
        let common = edges.iter().fold(u64::MAX, |m, e| m & ((1u64 << (e[0] - 1)) | (1u64 << (e[1] - 1))));
        let part = if edges.len() == 1 {
            StPart { kind: PartKind::Star, center: Some(edges[0][0]), edges }
        } else if common != 0 {
            StPart { kind: PartKind::Star, center: Some(common.trailing_zeros() + 1), edges }
        } else {
            let corners: BTreeSet<u32> = edges.iter().flatten().copied().collect();
            if edges.len() == 3 && corners.len() == 3 {
                StPart { kind: PartKind::Triangle, center: None, edges }
            } else {
                return Err(Error::InternalContract(format!(
                    "color class with edges {edges:?} is neither a star nor a triangle"
                )));
            }
        };
        parts.push(part);
    }
    Ok(StPartition { parts })
}

/// Colors each vertex of `KG(n,2)_(s1,s2)` by the index (from 1) of the part
/// holding its edge.
pub fn st_partition_to_coloring(h: &Hypergraph, p: &StPartition) -> Result<Coloring> {
    let (s1, s2) = pair_params(h)?;
    let w = build_w_graph(h.n(), s1, s2);
    p.validate(&w)?;
    let mut assignment = vec![0u32; h.vertex_count()];
    for (i, part) in p.parts.iter().enumerate() {
        for e in &part.edges {
            let a = KSubset::new(h.n(), e)?;
            let v = h
                .index_of(a)
                .ok_or_else(|| Error::Argument(format!("{a} is not a vertex of the Kneser graph")))?;
            assignment[v] = i as u32 + 1;
        }
    }
    Coloring::new(assignment)
}

/// Finds an induced butterfly (two triangles sharing exactly one vertex and
/// no other edges). Returns `[center, a, b, d, e]` with triangles `center,a,b`
/// and `center,d,e`.
pub fn is_butterfly_free(g: &Graph) -> Option<[usize; 5]> {
    for c in 0..g.vertex_count() {
        let nb = g.neighbors(c).to_vec();
        if nb.len() < 4 {
            continue;
        }
        for (ia, &a) in nb.iter().enumerate() {
            for &b in &nb[ia + 1..] {
                if !g.has_edge(a, b) {
                    continue;
                }
                for (id, &d) in nb.iter().enumerate() {
                    if d == a || d == b || g.has_edge(a, d) || g.has_edge(b, d) {
                        continue;
                    }
                    for &e in &nb[id + 1..] {
                        if e != a && e != b && g.has_edge(d, e) && !g.has_edge(a, e) && !g.has_edge(b, e) {
                            return Some([c, a, b, d, e]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Violations of the two structural properties of an ST-partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StReport {
    /// `(star center, index of a triangle part containing it)`.
    pub property1_violations: Vec<(u32, usize)>,
    /// Circuits of length at least 4 that use triangle edges only.
    pub property2_violations: Vec<Vec<u32>>,
}

impl StReport {
    pub fn holds(&self) -> bool {
        self.property1_violations.is_empty() && self.property2_violations.is_empty()
    }
}

const MAX_REPORTED_CIRCUITS: usize = 32;

/// Property (1): no star center is a corner of a triangle part.
/// Property (2): every circuit formed by triangle-part edges alone is a
/// triangle; reports longer circuits (up to a fixed number).
pub fn check_st_properties(p: &StPartition, g: &Graph) -> Result<StReport> {
    p.validate(g)?;
    let mut report = StReport::default();
    let triangles: Vec<(usize, Vec<u32>)> = p
        .parts
        .iter()
        .enumerate()
        .filter(|(_, part)| part.kind == PartKind::Triangle)
        .map(|(i, part)| (i, part.corners()))
        .collect();
    let mut centers: Vec<u32> = p.parts.iter().filter_map(|part| part.center).collect();
    centers.sort_unstable();
    centers.dedup();
    for c in centers {
        for (i, corners) in &triangles {
            if corners.contains(&c) {
                report.property1_violations.push((c, *i));
            }
        }
    }
    let mut t = Graph::empty(g.vertex_count());
    for (i, _) in &triangles {
        for e in &p.parts[*i].edges {
            t.add_edge(e[0] as usize - 1, e[1] as usize - 1);
        }
    }
    report.property2_violations = long_circuits(&t, MAX_REPORTED_CIRCUITS)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as u32 + 1).collect())
        .collect();
    Ok(report)
}

/// Simple cycles of length >= 4, each listed once (from its least vertex, in
/// the direction whose second vertex is smaller than its last).
fn long_circuits(g: &Graph, cap: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, on_path: &mut Vec<bool>, out: &mut Vec<Vec<usize>>, cap: usize) {
        let last = *path.last().expect("nonempty path");
        for next in g.neighbors(last).iter() {
            if out.len() >= cap {
                return;
            }
            if next == start && path.len() >= 4 && path[1] < last {
                out.push(path.clone());
            } else if next > start && !on_path[next] {
                on_path[next] = true;
                path.push(next);
                extend(g, start, path, on_path, out, cap);
                path.pop();
                on_path[next] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for start in 0..g.vertex_count() {
        let mut path = vec![start];
        on_path[start] = true;
        extend(g, start, &mut path, &mut on_path, &mut out, cap);
        on_path[start] = false;
    }
    out
}
