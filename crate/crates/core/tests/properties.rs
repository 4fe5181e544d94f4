use proptest::prelude::*;

use fence_rowmotion::fence::{Composition, Fence};
use fence_rowmotion::rowmotion::{
    orbit_of, rho_bits, rho_hat_bits, rho_hat_inverse_bits, rho_inverse_bits, Family,
};
use fence_rowmotion::stats::StatExpr;
use fence_rowmotion::tiling::{orbit_of_tiling, render_ascii, tiling_of_orbit, validate_tiling};
use fence_rowmotion::toggles::{apply_word_bits, random_linear_extension, rng, ToggleWord};

fn composition() -> impl Strategy<Value = Composition> {
    (prop::collection::vec(1usize..5, 0..5), 2usize..6, 2usize..6).prop_filter_map(
        "at most 20 elements",
        |(mid, first, last)| {
            let mut parts = vec![first];
            parts.extend(mid);
            parts.push(last);
            let c = Composition::new(parts).ok()?;
            (c.element_count() <= 20).then_some(c)
        },
    )
}

fn fence_and_subset() -> impl Strategy<Value = (Fence, u64)> {
    composition().prop_flat_map(|c| {
        let f = Fence::new(c).unwrap();
        let full = f.full_mask();
        (Just(f), any::<u64>().prop_map(move |b| b & full))
    })
}

proptest! {
    #[test]
    fn closures_land_in_their_families((f, s) in fence_and_subset()) {
        let down = f.down_set(s);
        prop_assert!(f.is_ideal_bits(down));
        prop_assert!(f.is_upper_ideal_bits(f.up_set(s)));
        let top = f.maxima(down);
        prop_assert!(f.is_antichain_bits(top));
        prop_assert_eq!(f.down_set(top), down);
        prop_assert!(f.is_upper_ideal_bits(f.full_mask() & !down));
    }

    #[test]
    fn rowmotion_maps_are_inverse((f, s) in fence_and_subset()) {
        let a = f.maxima(f.down_set(s));
        prop_assert!(f.is_antichain_bits(rho_bits(&f, a)));
        prop_assert_eq!(rho_inverse_bits(&f, rho_bits(&f, a)), a);
        let i = f.down_set(s);
        prop_assert!(f.is_ideal_bits(rho_hat_bits(&f, i)));
        prop_assert_eq!(rho_hat_inverse_bits(&f, rho_hat_bits(&f, i)), i);
        // Rowmotion commutes with taking down-sets.
        prop_assert_eq!(f.down_set(rho_bits(&f, a)), rho_hat_bits(&f, f.down_set(a)));
    }

    #[test]
    fn tiling_roundtrip((f, s) in fence_and_subset()) {
        let a = f.maxima(f.down_set(s));
        let seed = f.element_set(a, fence_rowmotion::SetKind::Antichain).unwrap();
        let orbit = orbit_of(&f, &seed).unwrap();
        let t = tiling_of_orbit(&f, &orbit).unwrap();
        prop_assert!(validate_tiling(f.alpha(), &t).is_valid());
        prop_assert_eq!(orbit_of_tiling(&f, &t).unwrap(), orbit.clone());
        let ascii = render_ascii(&t).unwrap();
        prop_assert_eq!(ascii.lines().count(), f.segment_count());
    }

    #[test]
    fn linear_extension_words_give_rowmotion((f, s) in fence_and_subset(), seed in any::<u64>()) {
        let order = random_linear_extension(&f, &mut rng(seed));
        let w = ToggleWord::coxeter(Family::Ideals, f.len(), order).unwrap();
        let i = f.down_set(s);
        prop_assert_eq!(apply_word_bits(&f, &w, i), rho_hat_bits(&f, i));
    }

    #[test]
    fn stat_expressions_reparse(
        terms in prop::collection::vec((-5i64..6, 1i64..4, 0usize..12, any::<bool>()), 0..5),
        num in -7i64..8,
        den in 1i64..5,
    ) {
        let mut e = StatExpr::zero();
        for (n, d, x, hat) in terms {
            let atom = if hat {
                fence_rowmotion::stats::Atom::ChiHat(x)
            } else {
                fence_rowmotion::stats::Atom::Chi(x)
            };
            e = e.plus(fence_rowmotion::stats::ratio(n, d), atom);
        }
        let e = e.with_constant(fence_rowmotion::stats::ratio(num, den));
        let text = e.to_string();
        let back: StatExpr = text.parse().unwrap();
        prop_assert_eq!(back, e);
    }
}
