//! Exhaustive structural invariants over small fences.

use std::collections::BTreeMap;

use fence_rowmotion::enumeration::count_ideals;
use fence_rowmotion::fence::Fence;
use fence_rowmotion::harness::theorems::fences_up_to;
use fence_rowmotion::harness::{conjectures, Config, Verdict};
use fence_rowmotion::rowmotion::{orbits, rho_bits, rho_inverse_bits, Family};
use fence_rowmotion::toggles::{
    admissible, base_graph, conjugate, conjugation_path, random_coxeter_word, rng, toggle_bits,
    word_orbits, DEFAULT_PATH_CAP,
};

const CAP: usize = 1 << 22;

fn fences(max_n: usize) -> Vec<Fence> {
    fences_up_to(max_n).into_iter().map(|a| Fence::new(a).unwrap()).collect()
}

#[test]
fn rowmotion_orbits_match_across_families() {
    for f in fences(10) {
        let anti = orbits(&f, Family::Antichains, CAP).unwrap();
        let ideal = orbits(&f, Family::Ideals, CAP).unwrap();
        let mut a: Vec<usize> = anti.iter().map(|o| o.size()).collect();
        let mut i: Vec<usize> = ideal.iter().map(|o| o.size()).collect();
        a.sort_unstable();
        i.sort_unstable();
        assert_eq!(a, i, "{}", f.alpha());
        let total: usize = a.iter().sum();
        assert_eq!(count_ideals(f.alpha()), total.into(), "{}", f.alpha());

        // Each ideal orbit is the down-set image of an antichain orbit.
        for o in &anti {
            let image: Vec<u64> = o.bits().iter().map(|&b| f.down_set(b)).collect();
            let target = ideal.iter().find(|io| io.contains_bits(image[0])).unwrap();
            let pos = target.bits().iter().position(|&b| b == image[0]).unwrap();
            for (k, &b) in image.iter().enumerate() {
                assert_eq!(target.bits()[(pos + k) % target.size()], b);
            }
        }
    }
}

#[test]
fn rho_inverse_inverts() {
    for f in fences(9) {
        for a in f.antichain_masks(CAP).unwrap() {
            assert_eq!(rho_inverse_bits(&f, rho_bits(&f, a)), a);
        }
    }
}

#[test]
fn toggles_are_involutions() {
    for f in fences(12) {
        for family in [Family::Antichains, Family::Ideals] {
            let sets = match family {
                Family::Antichains => f.antichain_masks(CAP).unwrap(),
                Family::Ideals => f.ideal_masks(CAP).unwrap(),
            };
            for &s in &sets {
                for x in 0..f.len() {
                    let t = toggle_bits(&f, family, x, s);
                    assert!(sets.contains(&t));
                    assert_eq!(toggle_bits(&f, family, x, t), s);
                }
            }
        }
    }
}

#[test]
fn conjugation_paths_exist_for_ideal_words() {
    let mut r = rng(7);
    for f in fences(8) {
        let g = base_graph(&f, Family::Ideals, CAP).unwrap();
        for _ in 0..4 {
            let w = random_coxeter_word(Family::Ideals, f.len(), &mut r);
            let w2 = random_coxeter_word(Family::Ideals, f.len(), &mut r);
            let path = conjugation_path(&w, &w2, &g, DEFAULT_PATH_CAP).unwrap();
            let mut cur = w.clone();
            for &x in &path {
                cur = conjugate(&cur, x, &g).unwrap();
            }
            assert_eq!(
                fence_rowmotion::toggles::orientation(&cur, &g),
                fence_rowmotion::toggles::orientation(&w2, &g)
            );
        }
    }
}

/// Orbit sizes paired with the indicator sums of every element.
fn orbit_profile(f: &Fence, cycles: &[Vec<u64>]) -> BTreeMap<(usize, Vec<u32>), usize> {
    let mut out = BTreeMap::new();
    for c in cycles {
        let sums: Vec<u32> = (0..f.len())
            .map(|x| c.iter().filter(|&&b| b >> x & 1 == 1).count() as u32)
            .collect();
        *out.entry((c.len(), sums)).or_default() += 1;
    }
    out
}

#[test]
fn admissible_conjugation_preserves_indicator_sums() {
    let mut r = rng(11);
    for f in fences(8) {
        let g = base_graph(&f, Family::Ideals, CAP).unwrap();
        let w = random_coxeter_word(Family::Ideals, f.len(), &mut r);
        let before = orbit_profile(&f, &word_orbits(&f, &w, CAP).unwrap());
        for x in admissible(&w, &g) {
            let w2 = conjugate(&w, x, &g).unwrap();
            let after = orbit_profile(&f, &word_orbits(&f, &w2, CAP).unwrap());
            assert_eq!(before, after, "{} conjugated by x{}", f.alpha(), x + 1);
        }
    }
}

#[test]
fn antichain_transfer_exhaustive_on_two_two_two() {
    let alpha = "2,2,2".parse().unwrap();
    let report = conjectures::scan_conjecture_antichain_transfer(&alpha, true, &Config::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    assert_eq!(report.instances[0].checks, 120);
}

#[test]
fn kappa_reverses_order_on_odd_palindromes() {
    for f in fences(12) {
        let alpha = f.alpha();
        if !alpha.is_palindromic() || alpha.len() % 2 == 0 {
            continue;
        }
        let k = f.kappa().unwrap();
        for x in 0..f.len() {
            assert_eq!(k.apply(k.apply(x)), x);
            for y in 0..f.len() {
                assert_eq!(f.leq(x, y), f.leq(k.apply(y), k.apply(x)));
            }
        }
        let full = f.full_mask();
        for i in f.ideal_masks(CAP).unwrap() {
            let c = k.ideal_complement_bits(full, i);
            assert!(f.is_ideal_bits(c));
            assert_eq!(k.ideal_complement_bits(full, c), i);
        }
    }
}
