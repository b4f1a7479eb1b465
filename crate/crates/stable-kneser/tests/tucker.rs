use proptest::prelude::*;
use stable_kneser::coloring::{block_coloring, Coloring};
use stable_kneser::solver::chromatic_number;
use stable_kneser::tucker::{
    alt_set, build_lambda, build_lambda_with, f_sets, tucker_lower_bound, verify_tucker_conditions, LabelScheme,
    SignedSet,
};
use stable_kneser::{build_stable_kneser, is_vec_stable, StabilityVector};

fn sv(s: &[u32]) -> StabilityVector {
    StabilityVector::new(s.to_vec()).unwrap()
}

fn all_signed(n: u32) -> impl Iterator<Item = SignedSet> {
    (0..3u32.pow(n)).filter(|&x| x > 0).map(move |mut x| {
        let signs: Vec<i8> = (0..n)
            .map(|_| {
                let d = x % 3;
                x /= 3;
                [0, 1, -1][d as usize]
            })
            .collect();
        SignedSet::new(&signs).unwrap()
    })
}

/// Longest alternating subset by trying every subset of the support.
fn brute_alt(a: &SignedSet) -> (usize, Vec<u32>) {
    let supp: Vec<u32> = (1..=a.n()).filter(|&i| a.sign(i) != 0).collect();
    let mut best: (usize, Vec<u32>) = (0, Vec::new());
    for m in 1u32..1 << supp.len() {
        let pick: Vec<u32> = (0..supp.len()).filter(|j| m >> j & 1 == 1).map(|j| supp[j]).collect();
        if pick.windows(2).all(|w| a.sign(w[0]) != a.sign(w[1])) {
            let better = pick.len() > best.0 || (pick.len() == best.0 && pick < best.1);
            if better {
                best = (pick.len(), pick);
            }
        }
    }
    best
}

#[test]
fn alt_set_matches_exhaustive_search() {
    for n in 1..=7 {
        for a in all_signed(n) {
            let got = alt_set(&a).unwrap();
            let (len, chosen) = brute_alt(&a);
            assert_eq!(got.length, len, "{a}");
            assert_eq!(got.chosen, chosen, "{a}");
            let first = (1..=n).find(|&i| a.sign(i) != 0).unwrap();
            assert_eq!(got.sign, a.sign(first));
        }
    }
}

#[test]
fn f_sets_are_disjoint_stable_and_pure() {
    for s in [[2u32, 2], [2, 1], [4, 2], [4, 4]] {
        let svec = sv(&s);
        for n in 6..=9 {
            for a in all_signed(n) {
                if alt_set(&a).unwrap().length <= svec.sum() as usize {
                    assert!(f_sets(&a, &svec).is_err());
                    continue;
                }
                let f = f_sets(&a, &svec).unwrap();
                assert_eq!(f.len(), s[1] as usize);
                for (i, x) in f.iter().enumerate() {
                    assert!(is_vec_stable(*x, n, &svec).unwrap(), "{x} in [{n}] for {svec}");
                    assert!(x.mask() & a.plus() == x.mask() || x.mask() & a.minus() == x.mask());
                    let e = x.elements();
                    assert!(e[1] - e[0] <= n - s[1]);
                    for y in &f[i + 1..] {
                        assert!(x.is_disjoint(*y));
                    }
                }
            }
        }
    }
}

#[test]
fn antipodality_exhaustive() {
    for (n, s) in [(6u32, [2u32, 2]), (8, [2, 2]), (8, [4, 2])] {
        let h = build_stable_kneser(n, 2, 2, &sv(&s)).unwrap();
        let c = block_coloring(&h).unwrap();
        for scheme in [LabelScheme::Published, LabelScheme::ShiftedThreshold] {
            let l = build_lambda_with(n, &sv(&s), &c, scheme).unwrap();
            for a in all_signed(n) {
                assert_eq!(l.evaluate(&a.negated()).unwrap(), -l.evaluate(&a).unwrap());
            }
        }
    }
}

#[test]
fn optimal_colorings_pass_both_conditions() {
    for s in [[2u32, 2], [4, 2]] {
        for n in s[0] + s[1]..=9 {
            let svec = sv(&s);
            let h = build_stable_kneser(n, 2, 2, &svec).unwrap();
            let chi = chromatic_number(&h, None);
            let c = chi.certificate.unwrap();
            for scheme in [LabelScheme::Published, LabelScheme::ShiftedThreshold] {
                let r = verify_tucker_conditions(&build_lambda_with(n, &svec, &c, scheme).unwrap()).unwrap();
                assert!(r.conditions_hold(), "n={n} {svec} {scheme:?}");
                assert!(r.coloring_proper);
                if scheme == LabelScheme::ShiftedThreshold {
                    assert!(r.range_ok);
                    assert_eq!(r.bound, Some(n - s[0]));
                }
            }
            assert_eq!(tucker_lower_bound(n, &svec, &c).unwrap(), n - s[0]);
            assert_eq!(chi.chi.exact(), Some(n - s[0]));
        }
    }
}

#[test]
fn published_scheme_can_exceed_range() {
    // SG(5,2) with the colors of its 5-cycle shifted up: the Case 2 label
    // reaches t + s_1 + 1.
    let svec = sv(&[2, 2]);
    let h = build_stable_kneser(5, 2, 2, &svec).unwrap();
    let c = block_coloring(&h).unwrap();
    let flipped = Coloring::new(c.assignment().iter().map(|&x| c.palette_size() + 1 - x).collect()).unwrap();
    let r = verify_tucker_conditions(&build_lambda(5, &svec, &flipped).unwrap()).unwrap();
    assert!(r.conditions_hold());
    assert_eq!(r.max_abs_label, r.range_m + 1);
    assert!(!r.range_ok);
    let r = verify_tucker_conditions(&build_lambda_with(5, &svec, &flipped, LabelScheme::ShiftedThreshold).unwrap())
        .unwrap();
    assert!(r.conditions_hold() && r.range_ok);
}

#[test]
fn improper_coloring_is_caught() {
    let svec = sv(&[2, 2]);
    let n = 8;
    let h = build_stable_kneser(n, 2, 2, &svec).unwrap();
    let c = chromatic_number(&h, None).certificate.unwrap();
    // Merge the two classes of a disjoint pair.
    let (u, v) = (0..h.vertex_count())
        .flat_map(|u| (0..h.vertex_count()).map(move |v| (u, v)))
        .find(|&(u, v)| h.vertex(u).is_disjoint(h.vertex(v)) && c.color(u) != c.color(v))
        .unwrap();
    let (keep, drop) = (c.color(u), c.color(v));
    let merged = Coloring::new(c.assignment().iter().map(|&x| if x == drop { keep } else { x }).collect()).unwrap();
    let r = verify_tucker_conditions(&build_lambda(n, &svec, &merged).unwrap()).unwrap();
    assert!(!r.coloring_proper);
    assert!(r.condition2_violation_count > 0);
    let w = &r.condition2_violations[0];
    assert!(w.smaller.precedes(&w.larger));
    assert_eq!(w.smaller_label, -w.larger_label);
    assert!(tucker_lower_bound(n, &svec, &merged).is_err());
}

#[test]
fn spec_lambda_example() {
    let svec = sv(&[2, 2]);
    let h = build_stable_kneser(9, 2, 2, &svec).unwrap();
    let c = chromatic_number(&h, None).certificate.unwrap();
    let l = build_lambda(9, &svec, &c).unwrap();
    let signs: Vec<i8> = (0..9).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    let a = SignedSet::new(&signs).unwrap();
    let f = f_sets(&a, &svec).unwrap();
    let (j0, min) = f
        .iter()
        .enumerate()
        .map(|(j, x)| (j, c.color(h.index_of(*x).unwrap())))
        .min_by_key(|&(j, col)| (col, j))
        .unwrap();
    let sign = if f[j0].mask() & a.plus() == f[j0].mask() { 1 } else { -1 };
    assert_eq!(l.evaluate(&a).unwrap(), sign * (4 + min as i32));
}

proptest! {
    #[test]
    fn negation_flips_label(signs in proptest::collection::vec(-1i8..=1, 9)) {
        prop_assume!(signs.iter().any(|&s| s != 0));
        let svec = sv(&[2, 2]);
        let h = build_stable_kneser(9, 2, 2, &svec).unwrap();
        let c = block_coloring(&h).unwrap();
        let l = build_lambda(9, &svec, &c).unwrap();
        let a = SignedSet::new(&signs).unwrap();
        prop_assert_eq!(l.evaluate(&a.negated()).unwrap(), -l.evaluate(&a).unwrap());
    }
}
