//! Scans of the open statements: palindromic tile sequences, the
//! constant-composition conjecture and the antichain transfer conjecture.

use serde_json::json;

use super::report::{run, Checker, Instance, VerificationReport};
use super::theorems::{hash_alpha, FenceData};
use super::Config;
use crate::error::{FenceError, Result};
use crate::fence::{BitIter, Composition, Fence};
use crate::rowmotion::{orbit_of, orbits, Family, Orbit};
use crate::stats::{int, ratio, StatExpr};
use crate::tiling::{orbit_tile_counts, TileCounts};
use crate::toggles::{battery, random_coxeter_word, rng, transfer_check, ToggleWord};

/// Black and red tile sequences of the exceptional orbit of `(4^8)`.
pub const EXCEPTIONAL_BLACK: [usize; 8] = [21, 20, 18, 18, 19, 18, 19, 21];
pub const EXCEPTIONAL_RED: [usize; 7] = [5, 4, 13, 4, 9, 8, 5];

fn exceptional() -> TileCounts {
    TileCounts {
        black: EXCEPTIONAL_BLACK.to_vec(),
        red: EXCEPTIONAL_RED.to_vec(),
    }
}

fn mirrored(tc: &TileCounts) -> TileCounts {
    TileCounts {
        black: tc.black.iter().rev().copied().collect(),
        red: tc.red.iter().rev().copied().collect(),
    }
}

fn palindromic(tc: &TileCounts) -> bool {
    tc.black_palindromic() && tc.red_palindromic()
}

fn orbit_entry(o: &Orbit, tc: &TileCounts) -> serde_json::Value {
    json!({
        "size": o.size(),
        "representative": o.representative().labels(),
        "black": tc.black,
        "red": tc.red,
    })
}

/// Tile-sequence palindromicity per orbit, the black/red equivalence, and
/// the homomesies that follow when every sequence is palindromic.
pub fn palindromic_props_instances(alpha: &Composition, cfg: &Config) -> Result<Vec<Instance>> {
    if !alpha.is_palindromic() {
        return Err(FenceError::NotPalindromic(alpha.to_string()));
    }
    let d = FenceData::new(alpha, cfg)?;
    let counts: Vec<TileCounts> = d.anti.iter().map(|o| orbit_tile_counts(&d.fence, o)).collect();
    let n = d.fence.len();
    let mut out = Vec::new();

    let mut seq = Checker::new(format!("({alpha}) tile sequences"));
    let black = counts.iter().filter(|tc| tc.black_palindromic()).count();
    let red = counts.iter().filter(|tc| tc.red_palindromic()).count();
    seq.note(format!(
        "{} orbits: {black} with palindromic black sequence, {red} with palindromic red sequence",
        counts.len()
    ));
    for (o, tc) in d.anti.iter().zip(&counts) {
        if !palindromic(tc) {
            seq.observe(orbit_entry(o, tc));
        }
    }
    if alpha.parts().iter().all(|&p| p >= 2) {
        for (o, tc) in d.anti.iter().zip(&counts) {
            seq.check(
                tc.black_palindromic() == tc.red_palindromic(),
                "black sequence palindromic iff red sequence palindromic",
                || orbit_entry(o, tc),
            );
        }
    } else {
        seq.mark_vacuous("the black/red equivalence needs every part at least 2");
    }
    out.push(seq.finish());

    let all = counts.iter().all(palindromic);
    let mut diff = Checker::new(format!("({alpha}) mirror differences"));
    let mut sums = Checker::new(format!("({alpha}) mirror sums"));
    if all {
        for k in 0..n / 2 {
            let e = StatExpr::chi(k) - StatExpr::chi(n - 1 - k);
            d.expect_mesic(&mut diff, &e, &int(0))?;
        }
        if alpha.len() % 2 == 1 {
            for k in 0..n / 2 {
                let e = StatExpr::chi_hat(k) + StatExpr::chi_hat(n - 1 - k);
                d.expect_mesic(&mut sums, &e, &int(1))?;
            }
        } else {
            sums.mark_vacuous("needs an odd number of parts");
        }
    } else {
        diff.mark_vacuous("some orbit has a non-palindromic tile sequence");
        sums.mark_vacuous("some orbit has a non-palindromic tile sequence");
    }
    out.push(diff.finish());
    out.push(sums.finish());
    Ok(out)
}

pub fn verify_palindromic_props(alpha: &Composition, cfg: &Config) -> Result<VerificationReport> {
    run(
        "palindromic",
        json!({ "alpha": alpha.to_string() }),
        std::slice::from_ref(alpha),
        |a| palindromic_props_instances(a, cfg),
    )
}

/// Every `(a, s)` with `a ≥ 2`, `s ≥ 1` and `a + s ≤ max_total`.
pub fn constant_pairs(max_total: usize) -> Vec<(usize, usize)> {
    (2..max_total)
        .flat_map(|a| (1..=max_total - a).map(move |s| (a, s)))
        .collect()
}

/// Palindromic on every orbit, except that `(4^8)` must show exactly the
/// exceptional sequences (and their mirror image).
pub fn palindromic_constant_instance(a: usize, s: usize, cfg: &Config) -> Result<Instance> {
    let alpha = Composition::constant(a, s)?;
    let f = Fence::new(alpha.clone())?;
    let anti = orbits(&f, Family::Antichains, cfg.max_family)?;
    let mut c = Checker::new(format!("({a}^{s})"));
    let special = (a, s) == (4, 8);
    let mut found = false;
    for o in &anti {
        let tc = orbit_tile_counts(&f, o);
        if special {
            if !palindromic(&tc) {
                c.observe(orbit_entry(o, &tc));
                found |= tc == exceptional();
                let known = tc == exceptional() || tc == mirrored(&exceptional());
                c.check(known, "non-palindromic orbit has the exceptional sequences", || orbit_entry(o, &tc));
            }
        } else {
            c.check(palindromic(&tc), "tile sequences are palindromic", || orbit_entry(o, &tc));
        }
    }
    if special {
        c.check(found, "exceptional orbit occurs", || json!({ "black": EXCEPTIONAL_BLACK, "red": EXCEPTIONAL_RED }));
    }
    Ok(c.finish())
}

pub fn scan_palindromic_constant(max_total: usize, cfg: &Config) -> Result<VerificationReport> {
    run(
        "palindromic-constant",
        json!({ "max_total": max_total }),
        &constant_pairs(max_total),
        |&(a, s)| Ok(vec![palindromic_constant_instance(a, s, cfg)?]),
    )
}

/// The exceptional orbit of `(4^8)`, found from its seed and by searching
/// all orbits for its sequences.
pub fn counterexample_instance(cfg: &Config) -> Result<Instance> {
    let f = Fence::new(Composition::constant(4, 8)?)?;
    let mut c = Checker::new("(4^8) exceptional orbit");
    let seed = f.antichain(&[1, 7])?;
    let orbit = orbit_of(&f, &seed)?;
    let tc = orbit_tile_counts(&f, &orbit);
    c.check_eq("black sequence of the orbit of {x1,x7}", tc.black.clone(), EXCEPTIONAL_BLACK.to_vec());
    c.check_eq("red sequence of the orbit of {x1,x7}", tc.red.clone(), EXCEPTIONAL_RED.to_vec());
    c.observe(orbit_entry(&orbit, &tc));

    let other = f.shared_element(1).unwrap();
    let pair = (1u64 << other) | (1u64 << 6);
    if !f.is_antichain_bits(pair) {
        c.note(format!(
            "the seed {{x{},x7}} (first shared element with the first unshared element of segment 2) is not an antichain",
            other + 1
        ));
    }

    let anti = orbits(&f, Family::Antichains, cfg.max_family)?;
    let matches: Vec<&Orbit> = anti
        .iter()
        .filter(|o| orbit_tile_counts(&f, o) == exceptional())
        .collect();
    c.note(format!("{} orbit(s) carry the exceptional sequences", matches.len()));
    c.check(matches.iter().any(|o| **o == orbit), "search finds the seeded orbit", || {
        json!(matches.iter().map(|o| o.representative().labels()).collect::<Vec<_>>())
    });
    Ok(c.finish())
}

pub fn verify_counterexample_4_8(cfg: &Config) -> Result<VerificationReport> {
    run("counterexample-4-8", json!({ "alpha": "4,4,4,4,4,4,4,4" }), &[()], |_| {
        Ok(vec![counterexample_instance(cfg)?])
    })
}

/// The antichain total is orbomesic, and for odd `s` the ideal total is
/// `n/2`-mesic.
pub fn constant_alpha_instance(a: usize, s: usize, cfg: &Config) -> Result<Instance> {
    let d = FenceData::new(&Composition::constant(a, s)?, cfg)?;
    let mut c = Checker::new(format!("({a}^{s})"));
    let chi = d.mesy(&StatExpr::card())?;
    c.check(chi.orbomesic, "antichain total is orbomesic", || {
        json!({ "alpha": d.fence.alpha().to_string(), "report": chi })
    });
    if s % 2 == 1 {
        d.expect_mesic(&mut c, &StatExpr::card_hat(), &ratio(d.fence.len() as i64, 2))?;
    }
    Ok(c.finish())
}

pub fn scan_conjecture_constant_alpha(max_total: usize, cfg: &Config) -> Result<VerificationReport> {
    run(
        "constant-alpha",
        json!({ "max_total": max_total }),
        &constant_pairs(max_total),
        |&(a, s)| Ok(vec![constant_alpha_instance(a, s, cfg)?]),
    )
}

/// In `(2^7)` an ideal and its complement lie in different orbits, yet
/// each orbit still averages `n/2`.
pub fn complement_example_instance(cfg: &Config) -> Result<Instance> {
    let f = Fence::new(Composition::constant(2, 7)?)?;
    let mut c = Checker::new("(2^7) complement in another orbit");
    let n = f.len() as i64;
    let literal = (1u64 << 1) | (1 << 3) | (1 << 6);
    if !f.is_ideal_bits(literal) && !f.is_antichain_bits(literal) {
        c.note("{x2,x4,x7} is neither an ideal nor an antichain; using the ideal generated by {x2,x6,x12}");
    }
    let ideal = f.down_closure(&f.antichain(&[2, 6, 12])?)?;
    let kappa = f.kappa()?;
    let comp = kappa.ideal_complement_bits(f.full_mask(), ideal.bits());
    let labels = |b: u64| BitIter(b).map(|x| x + 1).collect::<Vec<_>>();
    c.check_eq("complement", labels(comp), vec![1, 3, 4, 5]);
    c.check_eq("complement generators", labels(f.maxima(comp)), vec![1, 3, 5]);
    let first = orbit_of(&f, &ideal)?;
    let second = orbit_of(&f, &f.element_set(comp, crate::fence::SetKind::Ideal)?)?;
    c.check(!first.contains_bits(comp), "complement lies in a different orbit", || {
        json!({ "ideal": ideal.labels(), "complement": labels(comp) })
    });
    for o in [&first, &second] {
        let total: u64 = o.bits().iter().map(|b| b.count_ones() as u64).sum();
        let avg = ratio(total as i64, o.size() as i64);
        c.check(avg == ratio(n, 2), "orbit average is n/2", || {
            json!({ "representative": o.representative().labels(), "size": o.size(), "total": total })
        });
    }
    c.check_eq("orbit sizes", (first.size(), second.size()), (24, 24));
    let d = FenceData::new(f.alpha(), cfg)?;
    d.expect_mesic(&mut c, &StatExpr::card_hat(), &ratio(n, 2))?;
    Ok(c.finish())
}

pub fn verify_complement_example_2_7(cfg: &Config) -> Result<VerificationReport> {
    run("complement-2-7", json!({ "alpha": "2,2,2,2,2,2,2" }), &[()], |_| {
        Ok(vec![complement_example_instance(cfg)?])
    })
}

/// Homomesy and orbomesy verdicts under antichain Coxeter words.
/// Exhaustive mode compares every ordering with the identity ordering,
/// which is equivalent to comparing all pairs.
pub fn antichain_transfer_instance(alpha: &Composition, exhaustive: bool, cfg: &Config) -> Result<Instance> {
    let f = Fence::new(alpha.clone())?;
    let n = f.len();
    let stats = battery(n, Family::Antichains);
    let mut c = Checker::new(format!("({alpha})"));
    let record = |c: &mut Checker, w: &ToggleWord, w2: &ToggleWord| -> Result<()> {
        let report = transfer_check(&f, w, w2, &stats, cfg.max_family)?;
        c.check(report.agree, "verdicts agree", || {
            let bad: Vec<_> = report.comparisons.iter().filter(|x| !x.agree).collect();
            json!({ "alpha": alpha.to_string(), "first": report.first, "second": report.second, "disagreements": bad })
        });
        Ok(())
    };
    if exhaustive {
        let base = ToggleWord::coxeter(Family::Antichains, n, (0..n).collect())?;
        let mut order: Vec<usize> = (0..n).collect();
        loop {
            let w = ToggleWord::coxeter(Family::Antichains, n, order.clone())?;
            record(&mut c, &base, &w)?;
            if !next_permutation(&mut order) {
                break;
            }
        }
    } else {
        let mut r = rng(cfg.seed ^ hash_alpha(alpha));
        for _ in 0..cfg.samples {
            let w = random_coxeter_word(Family::Antichains, n, &mut r);
            let w2 = random_coxeter_word(Family::Antichains, n, &mut r);
            record(&mut c, &w, &w2)?;
        }
    }
    Ok(c.finish())
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn scan_conjecture_antichain_transfer(
    alpha: &Composition,
    exhaustive: bool,
    cfg: &Config,
) -> Result<VerificationReport> {
    run(
        "antichain-transfer",
        json!({ "alpha": alpha.to_string(), "exhaustive": exhaustive, "samples": cfg.samples, "seed": cfg.seed }),
        std::slice::from_ref(alpha),
        |a| Ok(vec![antichain_transfer_instance(a, exhaustive, cfg)?]),
    )
}

pub fn scan_conjecture_antichain_transfer_range(max_n: usize, cfg: &Config) -> Result<VerificationReport> {
    run(
        "antichain-transfer",
        json!({ "max_n": max_n, "samples": cfg.samples, "seed": cfg.seed }),
        &super::theorems::fences_up_to(max_n),
        |a| Ok(vec![antichain_transfer_instance(a, false, cfg)?]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::Verdict;

    #[test]
    fn permutations_are_exhausted() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(v, vec![3, 2, 1, 0]);
    }

    #[test]
    fn a1a1a_black_sequences_palindromic() {
        let cfg = Config::default();
        let alpha: Composition = "3,1,3,1,3".parse().unwrap();
        let d = FenceData::new(&alpha, &cfg).unwrap();
        for o in &d.anti {
            assert!(orbit_tile_counts(&d.fence, o).black_palindromic());
        }
    }

    #[test]
    fn small_constant_scans() {
        let cfg = Config::default();
        assert_eq!(constant_alpha_instance(2, 3, &cfg).unwrap().verdict, Verdict::Pass);
        assert_eq!(palindromic_constant_instance(3, 3, &cfg).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn complement_example() {
        let inst = complement_example_instance(&Config::default()).unwrap();
        assert_eq!(inst.verdict, Verdict::Pass, "{inst:?}");
    }

    #[test]
    fn non_palindromic_alpha_rejected() {
        let alpha: Composition = "3,2".parse().unwrap();
        assert!(verify_palindromic_props(&alpha, &Config::default()).is_err());
    }
}
