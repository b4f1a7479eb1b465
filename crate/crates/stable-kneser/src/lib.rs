//! Stable and vector-stable Kneser hypergraphs.
//!
//! The crate builds `KG^r(n,k)_s` for uniform and vector stability, provides
//! explicit colorings with their palette sizes, computes exact chromatic and
//! independence numbers at small scale, checks the combinatorial conditions of
//! Tucker's lemma for a concrete labeling, and sweeps parameter grids against
//! closed-form chromatic formulas.

pub mod bitset;
pub mod coloring;
pub mod combinatorics;
pub mod error;
pub mod harness;
pub mod hypergraph;
pub mod selftest;
pub mod solver;
pub mod tucker;
pub mod wgraph;

pub use combinatorics::{are_pairwise_disjoint, enumerate_k_subsets, is_s_stable, is_vec_stable, KSubset, StabilityVector};
pub use error::{Error, Result};
pub use hypergraph::{build_kneser, build_stable_kneser, Graph, Hypergraph};
pub use coloring::{block_coloring, interval_coloring, validate_coloring, Coloring, ColoringValidation};
pub use solver::{chromatic_number, independence_number, is_t_colorable, max_disjoint_packing, AlphaResult, ChiResult, ChiValue};
