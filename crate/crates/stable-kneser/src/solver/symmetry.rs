//! Dihedral symmetries of the ground set `[n]` that map the vertex set onto
//! itself. For uniform stability this is the full dihedral group of order
//! `2n`; vector stability usually keeps only a reflection.

use std::collections::HashMap;

/// A ground-set permutation (0-based) and the vertex permutation it induces.
#[derive(Clone, Debug)]
pub(crate) struct Symmetry {
    pub ground: Vec<u32>,
    pub vertex: Vec<u32>,
}

impl Symmetry {
    pub fn map_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.ground[i];
        }
        out
    }

    #[cfg(test)]
    pub fn is_identity(&self) -> bool {
        self.ground.iter().enumerate().all(|(i, &g)| g as usize == i)
    }
}

/// All rotations and reflections of `[n]` preserving the vertex set,
/// identity first.
pub(crate) fn dihedral_symmetries(masks: &[u64], n: u32) -> Vec<Symmetry> {
    let index: HashMap<u64, u32> = masks.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let mut out = Vec::new();
    for reflect in [false, true] {
        for rot in 0..n.max(1) {
            let ground: Vec<u32> = (0..n)
                .map(|i| {
                    let j = if reflect { n - 1 - i } else { i };
                    (j + rot) % n
                })
                .collect();
            let mut sym = Symmetry { ground, vertex: Vec::with_capacity(masks.len()) };
            let mut ok = true;
            for &m in masks {
                match index.get(&sym.map_mask(m)) {
                    Some(&j) => sym.vertex.push(j),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && !out.iter().any(|s: &Symmetry| s.ground == sym.ground) {
                out.push(sym);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::StabilityVector;
    use crate::hypergraph::build_stable_kneser;

    fn masks(n: u32, s: &[u32]) -> Vec<u64> {
        let h = build_stable_kneser(n, s.len() as u32, 2, &StabilityVector::new(s.to_vec()).unwrap()).unwrap();
        h.vertices().iter().map(|v| v.mask()).collect()
    }

    #[test]
    fn group_orders() {
        assert_eq!(dihedral_symmetries(&masks(12, &[2, 2, 2]), 12).len(), 24);
        assert_eq!(dihedral_symmetries(&masks(12, &[2, 2, 1]), 12).len(), 2);
        assert_eq!(dihedral_symmetries(&masks(10, &[2, 3]), 10).len(), 2);
        let g = dihedral_symmetries(&masks(9, &[2, 2]), 9);
        assert!(g[0].is_identity());
        for s in &g {
            let mut seen = s.vertex.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..seen.len() as u32).collect::<Vec<_>>());
        }
    }
}
