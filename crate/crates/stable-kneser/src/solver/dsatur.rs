//! DSATUR branch and bound for `t`-colorability of `KG^r`-type hypergraphs.
//!
//! Vertices are picked by saturation (colors already forbidden), then by
//! disjointness degree, then by id. A vertex may only take colors up to one
//! past the largest color in use. After each assignment the forbidden sets of
//! the uncolored vertices are updated exactly: `u` loses color `c` once class
//! `c` plus `u` contains `r` pairwise disjoint members.

use std::time::Instant;

pub(crate) const MAX_COLORS: u32 = 128;

pub(crate) enum DsaturOutcome {
    /// 0-based colors below `t`.
    Colorable(Vec<u32>),
    NotColorable,
    TimedOut,
}

pub(crate) struct DsaturRun {
    pub outcome: DsaturOutcome,
    pub nodes: u64,
}

/// Requires `1 <= t <= MAX_COLORS`.
pub(crate) fn dsatur(masks: &[u64], r: u32, t: u32, deadline: Option<Instant>) -> DsaturRun {
    assert!((1..=MAX_COLORS).contains(&t), "color count {t} outside 1..={MAX_COLORS}");
    let nv = masks.len();
    let degree: Vec<u32> = masks
        .iter()
        .map(|&a| masks.iter().filter(|&&b| a & b == 0).count() as u32)
        .collect();
    let mut s = State {
        masks,
        r,
        t,
        deadline,
        degree,
        color: vec![u32::MAX; nv],
        forbidden: vec![0; nv],
        classes: vec![Vec::new(); t as usize],
        trail: Vec::new(),
        nodes: 0,
    };
    let outcome = match s.search(0, 0) {
        Ok(true) => DsaturOutcome::Colorable(s.color),
        Ok(false) => DsaturOutcome::NotColorable,
        Err(()) => DsaturOutcome::TimedOut,
    };
    DsaturRun { outcome, nodes: s.nodes }
}

struct State<'a> {
    masks: &'a [u64],
    r: u32,
    t: u32,
    deadline: Option<Instant>,
    degree: Vec<u32>,
    color: Vec<u32>,
    forbidden: Vec<u128>,
    classes: Vec<Vec<u64>>,
    trail: Vec<(usize, u128)>,
    nodes: u64,
}

impl State<'_> {
    fn search(&mut self, colored: usize, used: u32) -> Result<bool, ()> {
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(());
                }
            }
        }
        if colored == self.masks.len() {
            return Ok(true);
        }
        let v = self.pick();
        let cap = (used + 1).min(self.t);
        for c in 0..cap {
            if self.forbidden[v] >> c & 1 == 1 {
                continue;
            }
            let mark = self.trail.len();
            self.assign(v, c);
            if self.search(colored + 1, used.max(c + 1))? {
                return Ok(true);
            }
            self.unassign(v, c, mark);
        }
        Ok(false)
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (0u32, 0u32);
        for v in 0..self.masks.len() {
            if self.color[v] != u32::MAX {
                continue;
            }
            let k = (self.forbidden[v].count_ones(), self.degree[v]);
            if best == usize::MAX || k > key {
                best = v;
                key = k;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.color[v] = c;
        let mv = self.masks[v];
        let bit = 1u128 << c;
        let need = self.r as usize - 2;
        for u in 0..self.masks.len() {
            if self.color[u] != u32::MAX || self.forbidden[u] & bit != 0 || self.masks[u] & mv != 0 {
                continue;
            }
            if need == 0 || has_packing(&self.classes[c as usize], mv | self.masks[u], need) {
                self.trail.push((u, self.forbidden[u]));
                self.forbidden[u] |= bit;
            }
        }
        self.classes[c as usize].push(mv);
    }

    fn unassign(&mut self, v: usize, c: u32, mark: usize) {
        self.classes[c as usize].pop();
        while self.trail.len() > mark {
            let (u, old) = self.trail.pop().expect("trail entry");
            self.forbidden[u] = old;
        }
        self.color[v] = u32::MAX;
    }
}

/// Are there `need` pairwise disjoint members of `class` avoiding `used`?
fn has_packing(class: &[u64], used: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    for (i, &m) in class.iter().enumerate() {
        if m & used == 0 && has_packing(&class[i + 1..], used | m, need - 1) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::StabilityVector;
    use crate::hypergraph::{build_kneser, build_stable_kneser};

    fn run(masks: &[u64], r: u32, t: u32) -> Option<Vec<u32>> {
        match dsatur(masks, r, t, None).outcome {
            DsaturOutcome::Colorable(c) => Some(c),
            DsaturOutcome::NotColorable => None,
            DsaturOutcome::TimedOut => unreachable!(),
        }
    }

    /// Independent check: no color class holds `r` pairwise disjoint sets.
    fn proper(masks: &[u64], r: u32, colors: &[u32]) -> bool {
        let t = colors.iter().max().map_or(0, |m| m + 1);
        (0..t).all(|c| {
            let class: Vec<u64> = masks.iter().zip(colors).filter(|(_, &x)| x == c).map(|(&m, _)| m).collect();
            !has_packing(&class, 0, r as usize)
        })
    }

    #[test]
    fn petersen_and_cycle() {
        let pet: Vec<u64> = build_kneser(5, 2, 2).unwrap().vertices().iter().map(|v| v.mask()).collect();
        assert!(run(&pet, 2, 2).is_none());
        assert!(proper(&pet, 2, &run(&pet, 2, 3).unwrap()));
        let sg = build_stable_kneser(5, 2, 2, &StabilityVector::uniform(2, 2).unwrap()).unwrap();
        let c5: Vec<u64> = sg.vertices().iter().map(|v| v.mask()).collect();
        assert!(run(&c5, 2, 2).is_none());
        assert!(run(&c5, 2, 3).is_some());
    }

    #[test]
    fn kneser_hypergraph_values() {
        // chi(KG^3(7,2)) = ceil((7 - 3*1)/2) = 2.
        let h: Vec<u64> = build_kneser(7, 2, 3).unwrap().vertices().iter().map(|v| v.mask()).collect();
        assert!(run(&h, 3, 1).is_none());
        let c = run(&h, 3, 2).unwrap();
        assert!(proper(&h, 3, &c));
        // chi(KG^3(9,2)) = ceil((9 - 3)/2) = 3.
        let h: Vec<u64> = build_kneser(9, 2, 3).unwrap().vertices().iter().map(|v| v.mask()).collect();
        assert!(run(&h, 3, 2).is_none());
        assert!(proper(&h, 3, &run(&h, 3, 3).unwrap()));
    }
}
