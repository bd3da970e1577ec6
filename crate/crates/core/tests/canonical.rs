mod common;

use common::*;
use graphgame::canonical::{canonical_labelling, edge_orbits};
use graphgame::{canonical_form, complete_board, is_isomorphic, ColoredBoard, Colour, EdgeId};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn relabelling_preserves_the_canonical_form(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let b = random_board(&mut rng, n);
        let p = random_permutation(&mut rng, n);
        prop_assert_eq!(canonical_form(&b).unwrap(), canonical_form(&b.permuted(&p)).unwrap());
    }

    #[test]
    fn relabel_maps_onto_the_canonical_board(n in 1usize..=8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let b = random_board(&mut rng, n);
        let lab = canonical_labelling(&b).unwrap();
        prop_assert_eq!(b.permuted(&lab.relabel), lab.form.board());
        for g in &lab.automorphisms {
            prop_assert_eq!(b.permuted(g), b);
        }
    }
}

#[test]
fn canonical_board_is_a_relabelling() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 1..=6 {
        for _ in 0..60 {
            let b = random_board(&mut rng, n);
            assert!(brute_isomorphic(&b, &canonical_form(&b).unwrap().board()), "{b}");
        }
    }
}

#[test]
fn three_red_three_blue_on_k4_classes_match_brute_force() {
    let k4 = complete_board(4).unwrap();
    let boards: Vec<ColoredBoard> = (0u32..64)
        .filter(|m| m.count_ones() == 3)
        .map(|m| {
            (0..6).fold(k4, |b, e| {
                let c = if m >> e & 1 == 1 { Colour::Red } else { Colour::Blue };
                b.apply_move(EdgeId(e), c).unwrap()
            })
        })
        .collect();
    assert_eq!(boards.len(), 20);
    for x in &boards {
        for y in &boards {
            assert_eq!(is_isomorphic(x, y).unwrap(), brute_isomorphic(x, y), "{x} vs {y}");
        }
    }
    let classes: std::collections::HashSet<_> = boards.iter().map(|b| canonical_form(b).unwrap()).collect();
    // Red triangle, red claw, red path, each with blue complement: K3, K_{1,3}, P4 (self-complementary).
    assert_eq!(classes.len(), 3);
}

#[test]
fn random_pairs_agree_with_brute_force_isomorphism() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 2..=5 {
        for _ in 0..300 {
            let x = random_board(&mut rng, n);
            // Either a relabelled copy or an unrelated board.
            let mut y = x.permuted(&random_permutation(&mut rng, n));
            if rand::Rng::gen_bool(&mut rng, 0.5) {
                y = random_board(&mut rng, n);
            }
            assert_eq!(is_isomorphic(&x, &y).unwrap(), brute_isomorphic(&x, &y), "{x} vs {y}");
        }
    }
}

#[test]
fn edge_orbits_are_sound_and_complete() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 2..=6 {
        for _ in 0..40 {
            let b = random_board(&mut rng, n);
            let auts = automorphisms(&b);
            let orbits = edge_orbits(&b).unwrap();
            let present: Vec<EdgeId> = (0..b.edge_slots()).map(EdgeId).filter(|&e| b.state(e).code() != 0).collect();
            for &e in &present {
                for &f in &present {
                    let (u, v) = e.endpoints();
                    let joined = auts.iter().any(|p| {
                        let (x, y) = (p[u], p[v]);
                        graphgame::colex_index(x.max(y), x.min(y)).unwrap() == f
                    });
                    assert_eq!(orbits.class_of(e) == orbits.class_of(f), joined, "{b}: {e} {f}");
                }
            }
        }
    }
}
