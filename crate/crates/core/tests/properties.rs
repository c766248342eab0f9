//! Randomized invariants: generators draw a composition and a walk through
//! the relevant closure, then check the structural laws on whatever comes
//! out.

use proptest::prelude::*;

use lascoux::{
    bruhat_leq, decode, encode, flat, in_kkd_set_recursive, kd_closure, key_diagram, kkd_closure,
    left_swap_leq, phi, psi, sharp, sharp_definitional, subset_leq, DiagramPair, WeakComposition,
    DEFAULT_STATE_CAP,
};

fn composition(max_n: usize, max_part: usize) -> impl Strategy<Value = WeakComposition> {
    prop::collection::vec(0..=max_part, 1..=max_n).prop_map(WeakComposition::new)
}

/// Walk `steps` pseudo-random moves from the key diagram.
fn walk(alpha: &WeakComposition, seed: u64, steps: usize, ghosts: bool) -> DiagramPair {
    let mut state = seed | 1;
    let mut cur = key_diagram(alpha);
    for _ in 0..steps {
        let succ: Vec<DiagramPair> = if ghosts {
            cur.k_kohnert_moves().into_iter().collect()
        } else {
            cur.kohnert_moves().into_iter().collect()
        };
        if succ.is_empty() {
            break;
        }
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        cur = succ[(state >> 33) as usize % succ.len()].clone();
    }
    cur
}

proptest! {
    #[test]
    fn composition_text_and_json_round_trip(parts in prop::collection::vec(0usize..50, 1..8)) {
        let a = WeakComposition::new(parts);
        let reparsed: WeakComposition = a.to_string().parse().unwrap();
        prop_assert_eq!(&reparsed, &a);
        let rejsoned: WeakComposition =
            serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(&rejsoned, &a);
    }

    #[test]
    fn subset_order_characterizations_agree(
        mask_a in 0u32..256,
        mask_b in 0u32..256,
    ) {
        let n = 8;
        let s: std::collections::BTreeSet<usize> =
            (1..=n).filter(|i| mask_a & (1 << (i - 1)) != 0).collect();
        let t: std::collections::BTreeSet<usize> =
            (1..=n).filter(|i| mask_b & (1 << (i - 1)) != 0).collect();
        let by_rank = subset_leq(&s, &t);
        let by_indicator = bruhat_leq(
            &WeakComposition::indicator(&s, n),
            &WeakComposition::indicator(&t, n),
        );
        let by_count = s.len() == t.len()
            && s.iter().all(|&x| {
                s.iter().filter(|&&y| y >= x).count() <= t.iter().filter(|&&y| y >= x).count()
            });
        prop_assert_eq!(by_rank, by_indicator);
        prop_assert_eq!(by_rank, by_count);
    }

    #[test]
    fn left_swap_order_is_bruhat(
        gamma in composition(4, 3),
        alpha in composition(4, 3),
    ) {
        prop_assert_eq!(left_swap_leq(&gamma, &alpha), bruhat_leq(&gamma, &alpha));
    }

    #[test]
    fn raises_invert_by_drops(
        alpha in composition(4, 3),
        seed in any::<u64>(),
        steps in 0usize..6,
        g in 1usize..=4,
    ) {
        prop_assume!(g <= alpha.len());
        let d = walk(&alpha, seed, steps, false);
        if let Some(res) = sharp(&d, g, &alpha) {
            let back = flat(&res.diagram, res.partner, &alpha).unwrap();
            prop_assert_eq!(back.diagram, d);
            prop_assert_eq!(back.partner, g);
        }
    }

    #[test]
    fn sharp_routine_matches_search(
        alpha in composition(4, 3),
        seed in any::<u64>(),
        steps in 0usize..6,
        g in 1usize..=4,
    ) {
        prop_assume!(g <= alpha.len());
        let d = walk(&alpha, seed, steps, false);
        prop_assert_eq!(sharp(&d, g, &alpha), sharp_definitional(&d, g, &alpha));
    }

    #[test]
    fn maps_round_trip_and_preserve_statistics(
        alpha in composition(4, 2),
        seed in any::<u64>(),
        steps in 0usize..8,
    ) {
        let n = alpha.len();
        let d = walk(&alpha, seed, steps, true);
        prop_assert!(in_kkd_set_recursive(&d, &alpha));
        let t = psi(&d, &alpha).unwrap();
        prop_assert_eq!(t.weight(n), d.weight(n));
        prop_assert_eq!(t.excess(), d.excess());
        prop_assert_eq!(phi(&t, &alpha).unwrap(), d);
    }

    #[test]
    fn tableau_codec_round_trips_through_maps(
        alpha in composition(3, 3),
        seed in any::<u64>(),
        steps in 0usize..8,
    ) {
        // psi images are valid tableau pairs; decode/encode must fix them
        let d = walk(&alpha, seed, steps, true);
        let t = psi(&d, &alpha).unwrap();
        let tableau = decode(&t).unwrap();
        prop_assert_eq!(encode(&tableau), t);
    }

    #[test]
    fn maps_round_trip_on_the_seven_row_composition(
        seed in any::<u64>(),
        steps in 0usize..12,
    ) {
        let alpha = WeakComposition::new(vec![0, 0, 2, 0, 3, 1, 2]);
        let d = walk(&alpha, seed, steps, true);
        let t = psi(&d, &alpha).unwrap();
        prop_assert_eq!(t.weight(7), d.weight(7));
        prop_assert_eq!(t.excess(), d.excess());
        prop_assert_eq!(phi(&t, &alpha).unwrap(), d);
    }

    #[test]
    fn closure_membership_is_stable_under_moves(
        alpha in composition(3, 2),
        seed in any::<u64>(),
        steps in 0usize..6,
    ) {
        let kd = kd_closure(&alpha, DEFAULT_STATE_CAP).unwrap();
        let kkd = kkd_closure(&alpha, DEFAULT_STATE_CAP).unwrap();
        let d = walk(&alpha, seed, steps, false);
        prop_assert!(kd.contains(&d));
        let p = walk(&alpha, seed, steps, true);
        prop_assert!(kkd.contains(&p));
    }
}
