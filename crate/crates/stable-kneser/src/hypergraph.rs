//! Stable Kneser hypergraphs `KG^r(n,k)_s`: vertices are the s-stable
//! k-subsets of `[n]`, hyperedges are r-tuples of pairwise disjoint vertices.
//! Hyperedges are never stored; the packing search answers every query.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::combinatorics::{check_ground, enumerate_k_subsets, vec_stable_unchecked, KSubset, StabilityVector};
use crate::error::{arg, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: u32,
    k: u32,
    r: u32,
    svec: StabilityVector,
    vertices: Vec<KSubset>,
}

impl Hypergraph {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn svec(&self) -> &StabilityVector {
        &self.svec
    }

    pub fn vertices(&self) -> &[KSubset] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: usize) -> KSubset {
        self.vertices[id]
    }

    /// Vertex id of `a`, if `a` is a vertex.
    pub fn index_of(&self, a: KSubset) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.lex_cmp(a)).ok()
    }

    /// Same ground set and uniformity, keeping only the listed vertices
    /// (ids refer to this hypergraph). The stability vector is kept as a
    /// label; every kept vertex still satisfies it.
    pub fn induced(&self, ids: &[usize]) -> Hypergraph {
        let mut vertices: Vec<KSubset> = ids.iter().map(|&i| self.vertices[i]).collect();
        vertices.sort_by(|a, b| a.lex_cmp(*b));
        vertices.dedup();
        Hypergraph { vertices, ..self.clone() }
    }

    /// Returns `r` pairwise disjoint members of `ids` (the lexicographically
    /// first such tuple in ascending id order), or `None` if there are none.
    pub fn class_has_r_disjoint(&self, ids: &[usize], r: u32) -> Option<Vec<usize>> {
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let masks: Vec<u64> = sorted.iter().map(|&i| self.vertices[i].mask()).collect();
        let mut picked = Vec::with_capacity(r as usize);
        if packing_dfs(&masks, self.ground_mask(), self.k, r as usize, 0, 0, &mut picked) {
            Some(picked.into_iter().map(|p| sorted[p]).collect())
        } else {
            None
        }
    }

    /// Hyperedges in lexicographic order of their vertex-id tuples, at most
    /// `limit` of them when given.
    pub fn enumerate_hyperedges(&self, limit: Option<usize>) -> Hyperedges<'_> {
        Hyperedges {
            h: self,
            stack: Vec::new(),
            cursor: 0,
            emitted: 0,
            limit: limit.unwrap_or(usize::MAX),
            finished: false,
        }
    }

    /// True iff at least one hyperedge exists.
    pub fn has_hyperedge(&self) -> bool {
        self.enumerate_hyperedges(Some(1)).next().is_some()
    }

    pub fn ground_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// The graph on the same vertices with adjacency = disjointness.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.r != 2 {
            return arg(format!("to_graph needs r = 2, got r = {}", self.r));
        }
        let nv = self.vertices.len();
        let mut g = Graph::empty(nv);
        for i in 0..nv {
            for j in i + 1..nv {
                if self.vertices[i].is_disjoint(self.vertices[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&HypergraphJson::from(self)).expect("hypergraph serializes")
    }

    /// Parses and validates the JSON form; the vertex list must be exactly
    /// what [`build_stable_kneser`] produces or an induced sublist of it.
    pub fn from_json(text: &str) -> Result<Hypergraph> {
        let raw: HypergraphJson = serde_json::from_str(text).map_err(|e| Error::Argument(e.to_string()))?;
        raw.try_into()
    }
}

fn packing_dfs(masks: &[u64], ground: u64, k: u32, r: usize, start: usize, used: u64, picked: &mut Vec<usize>) -> bool {
    let depth = picked.len();
    if depth == r {
        return true;
    }
    let need = (r - depth) as u32;
    if (ground & !used).count_ones() < k * need || masks.len() - start < need as usize {
        return false;
    }
    for i in start..masks.len() {
        if masks.len() - i < need as usize {
            break;
        }
        if masks[i] & used == 0 {
            picked.push(i);
            if packing_dfs(masks, ground, k, r, i + 1, used | masks[i], picked) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

/// Lazy stream of hyperedges, see [`Hypergraph::enumerate_hyperedges`].
pub struct Hyperedges<'a> {
    h: &'a Hypergraph,
    stack: Vec<usize>,
    cursor: usize,
    emitted: usize,
    limit: usize,
    finished: bool,
}

impl Iterator for Hyperedges<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let r = self.h.r as usize;
        let nv = self.h.vertices.len();
        let ground = self.h.ground_mask();
        loop {
            if self.finished || self.emitted >= self.limit {
                return None;
            }
            let used = self.stack.iter().fold(0u64, |m, &i| m | self.h.vertices[i].mask());
            let need = r - self.stack.len();
            let feasible = (ground & !used).count_ones() >= self.h.k * need as u32;
            let found = if feasible {
                (self.cursor..nv)
                    .take_while(|&j| nv - j >= need)
                    .find(|&j| self.h.vertices[j].mask() & used == 0)
            } else {
                None
            };
            match found {
                Some(j) if need == 1 => {
                    self.cursor = j + 1;
                    self.emitted += 1;
                    let mut edge = self.stack.clone();
                    edge.push(j);
                    return Some(edge);
                }
                Some(j) => {
                    self.stack.push(j);
                    self.cursor = j + 1;
                }
                None => match self.stack.pop() {
                    Some(j) => self.cursor = j + 1,
                    None => self.finished = true,
                },
            }
        }
    }
}

/// Builds `KG^r(n,k)_svec`: all `svec`-stable k-subsets of `[n]`, in
/// lexicographic order.
pub fn build_stable_kneser(n: u32, k: u32, r: u32, svec: &StabilityVector) -> Result<Hypergraph> {
    check_ground(n)?;
    if r < 2 {
        return arg(format!("uniformity r must be at least 2, got {r}"));
    }
    if k < 1 {
        return arg("subset size k must be at least 1");
    }
    if svec.k() != k as usize {
        return arg(format!("stability vector has {} entries but k = {k}", svec.k()));
    }
    let vertices = enumerate_k_subsets(n, k)?
        .filter(|&a| vec_stable_unchecked(a, n, svec.as_slice()))
        .collect();
    Ok(Hypergraph { n, k, r, svec: svec.clone(), vertices })
}

/// The full Kneser hypergraph `KG^r(n,k)` (stability vector of ones).
pub fn build_kneser(n: u32, k: u32, r: u32) -> Result<Hypergraph> {
    build_stable_kneser(n, k, r, &StabilityVector::uniform(1, k.max(1) as usize)?)
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: u32,
    k: u32,
    r: u32,
    svec: Vec<u32>,
    vertices: Vec<Vec<u32>>,
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson {
            n: h.n,
            k: h.k,
            r: h.r,
            svec: h.svec.as_slice().to_vec(),
            vertices: h.vertices.iter().map(|v| v.elements()).collect(),
        }
    }
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(raw: HypergraphJson) -> Result<Hypergraph> {
        let svec = StabilityVector::new(raw.svec)?;
        let full = build_stable_kneser(raw.n, raw.k, raw.r, &svec)?;
        let mut vertices = Vec::with_capacity(raw.vertices.len());
        for elems in &raw.vertices {
            let a = KSubset::new(raw.n, elems)?;
            if a.len() != raw.k as usize || !vec_stable_unchecked(a, raw.n, svec.as_slice()) {
                return arg(format!("{a} is not an {svec}-stable {}-subset of [{}]", raw.k, raw.n));
            }
            vertices.push(a);
        }
        if vertices.windows(2).any(|w| w[0].lex_cmp(w[1]) != std::cmp::Ordering::Less) {
            return arg("vertices must be strictly increasing in lexicographic order");
        }
        Ok(Hypergraph { vertices, ..full })
    }
}

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Graph {
        Graph { adjacency: vec![VertexSet::new(vertex_count); vertex_count] }
    }

    pub fn complete(vertex_count: usize) -> Graph {
        let mut g = Graph::empty(vertex_count);
        for i in 0..vertex_count {
            for j in i + 1..vertex_count {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(vertex_count);
        for &(u, v) in edges {
            if u == v || u >= vertex_count || v >= vertex_count {
                return arg(format!("bad edge ({u}, {v}) for {vertex_count} vertices"));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &VertexSet {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            out.extend(self.adjacency[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// True iff no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}
