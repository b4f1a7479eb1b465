//! Exact `t`-colorability of a Kneser-type graph (`r = 2`) by covering.
//!
//! Every color class is an intersecting family. A class whose members share
//! an element `x` can be enlarged to the whole star of `x`; any other class
//! lies in a maximal intersecting family with no common element. So `G` is
//! `t`-colorable iff for some `X` of at most `t` ground elements the
//! vertices avoiding `X` are covered by `t - |X|` maximal non-star
//! intersecting families. The search enumerates `X` up to the dihedral
//! symmetries of the vertex set, lists the families with Bron-Kerbosch and
//! solves each set-cover instance by branch and bound.

use std::collections::HashMap;
use std::time::Instant;

use super::bits::{with_width, Bits};
use super::symmetry::{dihedral_symmetries, Symmetry};

/// Give up (and let the caller fall back) beyond this many sets `X`.
const MAX_CENTER_SETS: u64 = 1 << 24;
/// Give up beyond this many maximal families for one `X`.
const MAX_FAMILIES: usize = 1 << 20;
const PLANES: usize = 21;

pub(crate) enum CoverOutcome {
    /// 0-based colors below `t`.
    Colorable(Vec<u32>),
    NotColorable,
    TimedOut,
    Unsupported,
}

pub(crate) struct CoverRun {
    pub outcome: CoverOutcome,
    pub nodes: u64,
}

/// Decides whether the graph on `masks` (adjacent iff disjoint) over ground
/// set `[n]` has a proper `t`-coloring.
pub(crate) fn star_cover(masks: &[u64], n: u32, t: u32, deadline: Option<Instant>) -> CoverRun {
    let nv = masks.len();
    if nv == 0 {
        return CoverRun { outcome: CoverOutcome::Colorable(Vec::new()), nodes: 0 };
    }
    if center_set_count(n, t) > MAX_CENTER_SETS {
        return CoverRun { outcome: CoverOutcome::Unsupported, nodes: 0 };
    }
    with_width!(nv, W => Search::<W>::new(masks, n, t, deadline).run(), else CoverRun { outcome: CoverOutcome::Unsupported, nodes: 0 })
}

fn center_set_count(n: u32, t: u32) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for j in 0..=t.min(n) as u64 {
        total = total.saturating_add(c);
        c = c.saturating_mul(n as u64 - j) / (j + 1);
    }
    total
}

enum Abort {
    Timeout,
    Overflow,
}

struct Search<'a, const W: usize> {
    masks: &'a [u64],
    n: u32,
    t: u32,
    deadline: Option<Instant>,
    group: Vec<Symmetry>,
    nodes: u64,
}

struct Families<const W: usize> {
    sets: Vec<Bits<W>>,
    hist: Vec<u32>,
    chosen: Vec<u32>,
}

impl<'a, const W: usize> Search<'a, W> {
    fn new(masks: &'a [u64], n: u32, t: u32, deadline: Option<Instant>) -> Self {
        let group = dihedral_symmetries(masks, n);
        Search { masks, n, t, deadline, group, nodes: 0 }
    }

    fn run(mut self) -> CoverRun {
        let outcome = match self.search_centers() {
            Ok(Some(colors)) => CoverOutcome::Colorable(colors),
            Ok(None) => CoverOutcome::NotColorable,
            Err(Abort::Timeout) => CoverOutcome::TimedOut,
            Err(Abort::Overflow) => CoverOutcome::Unsupported,
        };
        CoverRun { outcome, nodes: self.nodes }
    }

    fn tick(&mut self) -> Result<(), Abort> {
        self.nodes += 1;
        if self.nodes & 255 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Abort::Timeout);
                }
            }
        }
        Ok(())
    }

    fn search_centers(&mut self) -> Result<Option<Vec<u32>>, Abort> {
        let n = self.n;
        for size in 0..=self.t.min(n) {
            let mut x: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
            loop {
                if let Some(families) = self.try_centers(x)? {
                    return Ok(Some(self.assemble(x, &families)));
                }
                if size == 0 || size == n {
                    break;
                }
                let c = x & x.wrapping_neg();
                let r = x.wrapping_add(c);
                x = (((r ^ x) >> 2) / c) | r;
                if n < 64 && x >> n != 0 {
                    break;
                }
                if x == 0 {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// Families covering the vertices that avoid `x`, if `|x|` stars plus
    /// `t - |x|` families suffice and `x` is canonical.
    fn try_centers(&mut self, x: u64) -> Result<Option<Vec<Bits<W>>>, Abort> {
        self.tick()?;
        if self.group.iter().any(|g| g.map_mask(x) < x) {
            return Ok(None);
        }
        let mut seen_alone = 0u64;
        for &m in self.masks {
            let c = m & x;
            if c != 0 && c & (c - 1) == 0 {
                seen_alone |= c;
            }
        }
        if seen_alone != x {
            return Ok(None);
        }
        let mut rest = Bits::<W>::ZERO;
        for (i, &m) in self.masks.iter().enumerate() {
            if m & x == 0 {
                rest.set(i);
            }
        }
        if rest.is_zero() {
            return Ok(Some(Vec::new()));
        }
        let q = self.t - x.count_ones();
        if q == 0 {
            return Ok(None);
        }
        let sets = self.maximal_families(rest)?;
        let (orbit, reps) = self.family_orbits(x, &sets);
        let mut fam = Families { sets, hist: vec![0; self.masks.len() + 2], chosen: Vec::new() };
        for (o, &ri) in reps.iter().enumerate() {
            let u2 = rest.and_not(&fam.sets[ri]);
            let next: Vec<u32> = (0..fam.sets.len())
                .filter(|&f| orbit[f] >= o && fam.sets[f].intersects(&u2))
                .map(|f| f as u32)
                .collect();
            fam.chosen.push(ri as u32);
            if self.cover(&mut fam, u2, q as usize - 1, &next)? {
                return Ok(Some(fam.chosen.iter().map(|&i| fam.sets[i as usize]).collect()));
            }
            fam.chosen.pop();
        }
        Ok(None)
    }

    /// Maximal intersecting families inside `rest` with empty common
    /// intersection, sorted.
    fn maximal_families(&mut self, rest: Bits<W>) -> Result<Vec<Bits<W>>, Abort> {
        let nv = self.masks.len();
        let mut nb = vec![Bits::<W>::ZERO; nv];
        for i in rest.iter() {
            for j in rest.iter() {
                if i != j && self.masks[i] & self.masks[j] != 0 {
                    nb[i].set(j);
                }
            }
        }
        let mut out = Vec::new();
        self.bron_kerbosch(Bits::ZERO, rest, Bits::ZERO, &nb, &mut out)?;
        out.sort_unstable();
        Ok(out)
    }

    fn bron_kerbosch(
        &mut self,
        r: Bits<W>,
        mut p: Bits<W>,
        mut x: Bits<W>,
        nb: &[Bits<W>],
        out: &mut Vec<Bits<W>>,
    ) -> Result<(), Abort> {
        self.tick()?;
        if p.is_zero() && x.is_zero() {
            let common = r.iter().fold(u64::MAX, |acc, i| acc & self.masks[i]);
            if common == 0 {
                if out.len() >= MAX_FAMILIES {
                    return Err(Abort::Overflow);
                }
                out.push(r);
            }
            return Ok(());
        }
        let pivot = p.or(&x).iter().max_by_key(|&u| (nb[u].and_count(&p), std::cmp::Reverse(u))).expect("p or x nonempty");
        for v in p.and_not(&nb[pivot]).iter() {
            let mut r2 = r;
            r2.set(v);
            self.bron_kerbosch(r2, p.and(&nb[v]), x.and(&nb[v]), nb, out)?;
            p.clear(v);
            x.set(v);
        }
        Ok(())
    }

    /// Orbit index of every family under the symmetries fixing `x`, with the
    /// first member of each orbit as its representative.
    fn family_orbits(&self, x: u64, sets: &[Bits<W>]) -> (Vec<usize>, Vec<usize>) {
        let stab: Vec<&Symmetry> = self.group.iter().filter(|g| g.map_mask(x) == x).collect();
        let index: HashMap<Bits<W>, usize> = sets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut orbit = vec![usize::MAX; sets.len()];
        let mut reps = Vec::new();
        for i in 0..sets.len() {
            if orbit[i] != usize::MAX {
                continue;
            }
            let o = reps.len();
            reps.push(i);
            for g in &stab {
                let mut img = Bits::<W>::ZERO;
                for v in sets[i].iter() {
                    img.set(g.vertex[v] as usize);
                }
                orbit[index[&img]] = o;
            }
        }
        (orbit, reps)
    }

    /// Can `q` of the `allowed` families cover `u`?
    fn cover(&mut self, fam: &mut Families<W>, u: Bits<W>, q: usize, allowed: &[u32]) -> Result<bool, Abort> {
        self.tick()?;
        if u.is_zero() {
            return Ok(true);
        }
        if q == 0 {
            return Ok(false);
        }
        let nu = u.count() as usize;
        fam.hist[..=nu].iter_mut().for_each(|h| *h = 0);
        let mut planes = [Bits::<W>::ZERO; PLANES];
        let mut used_planes = 0;
        let mut covered = Bits::<W>::ZERO;
        let mut rows: Vec<(u32, u32, Bits<W>)> = Vec::with_capacity(allowed.len());
        for &fi in allowed {
            let fu = fam.sets[fi as usize].and(&u);
            let c = fu.count();
            fam.hist[c as usize] += 1;
            covered = covered.or(&fu);
            let mut carry = fu;
            let mut p = 0;
            while !carry.is_zero() {
                let next = planes[p].and(&carry);
                planes[p] = planes[p].xor(&carry);
                carry = next;
                p += 1;
            }
            used_planes = used_planes.max(p);
            rows.push((fi, c, fu));
        }
        if covered != u {
            return Ok(false);
        }
        if top_sum(&fam.hist[..=nu], q) < nu {
            return Ok(false);
        }
        // Stable counting sort by decreasing restricted size.
        let mut slot = vec![0usize; nu + 2];
        for c in (0..nu).rev() {
            slot[c] = slot[c + 1] + fam.hist[c + 1] as usize;
        }
        let mut order = vec![0u32; rows.len()];
        for (ri, row) in rows.iter().enumerate() {
            let c = row.1 as usize;
            order[slot[c]] = ri as u32;
            slot[c] += 1;
        }
        let mut assigned = Bits::<W>::ZERO;
        let mut bound = 0.0f64;
        for &ri in &order {
            let (_, c, fu) = rows[ri as usize];
            let fresh = fu.and_not(&assigned);
            if !fresh.is_zero() {
                bound += fresh.count() as f64 / c as f64;
                assigned = assigned.or(&fresh);
                if assigned == u {
                    break;
                }
            }
        }
        if bound > q as f64 + 1e-9 {
            return Ok(false);
        }
        let mut v = usize::MAX;
        let mut best = u32::MAX;
        for w in u.iter() {
            let mut c = 0u32;
            for (p, plane) in planes[..used_planes].iter().enumerate() {
                c |= (plane.get(w) as u32) << p;
            }
            if c < best {
                best = c;
                v = w;
            }
        }
        let min_size = nu.saturating_sub(top_sum(&fam.hist[..=nu], q - 1)) as u32;
        // Candidates through `v`, largest first; each one dominated by an
        // earlier branch is only allowed from that branch on.
        let mut dom = vec![u32::MAX; rows.len()];
        let mut branches: Vec<(u32, Bits<W>)> = Vec::new();
        for &ri in &order {
            let (fi, c, fu) = rows[ri as usize];
            if c < min_size {
                break;
            }
            if !fu.get(v) {
                continue;
            }
            match branches.iter().position(|(_, d)| fu.is_subset_of(d)) {
                Some(j) => dom[ri as usize] = j as u32,
                None => {
                    dom[ri as usize] = branches.len() as u32;
                    branches.push((fi, fu));
                }
            }
        }
        for (i, &(fi, g)) in branches.iter().enumerate() {
            let u2 = u.and_not(&g);
            let next: Vec<u32> = rows
                .iter()
                .zip(&dom)
                .filter(|((_, c, fu), &d)| {
                    *c >= min_size && fu.intersects(&u2) && (!fu.get(v) || (d != u32::MAX && d as usize >= i))
                })
                .map(|((f, _, _), _)| *f)
                .collect();
            fam.chosen.push(fi);
            if self.cover(fam, u2, q - 1, &next)? {
                return Ok(true);
            }
            fam.chosen.pop();
        }
        Ok(false)
    }

    /// Color `j` for the `j`-th element of `x` (stars), then one color per
    /// chosen family.
    fn assemble(&self, x: u64, families: &[Bits<W>]) -> Vec<u32> {
        let stars = x.count_ones();
        self.masks
            .iter()
            .enumerate()
            .map(|(v, &m)| {
                let hit = m & x;
                if hit != 0 {
                    (x & ((hit & hit.wrapping_neg()) - 1)).count_ones()
                } else {
                    let f = families.iter().position(|f| f.get(v)).expect("cover reaches every vertex");
                    stars + f as u32
                }
            })
            .collect()
    }
}

/// Sum of the `q` largest sizes in a size histogram.
fn top_sum(hist: &[u32], q: usize) -> usize {
    let mut need = q;
    let mut sum = 0;
    for sz in (1..hist.len()).rev() {
        if need == 0 {
            break;
        }
        let take = (hist[sz] as usize).min(need);
        sum += take * sz;
        need -= take;
    }
    sum
}
