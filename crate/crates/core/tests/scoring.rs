mod common;

use common::*;
use graphgame::scoring::{clique_score, colex_score, star_score, vc_score, Objective};
use graphgame::{complete_board, ColoredBoard, Colour, EdgeId, EdgeState, GameKind, Outcome};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn pairs(k: u32) -> u32 {
    k * k.saturating_sub(1) / 2
}

#[test]
fn objective_orders_by_score_then_first_player() {
    for n in 1..=10 {
        for kind in GameKind::ALL {
            let obj = Objective::for_game(kind, n);
            let cap = kind.score_cap(n);
            let all: Vec<Outcome> = (0..=cap).flat_map(|a| (0..=cap).map(move |b| Outcome::new(a, b))).collect();
            for &x in &all {
                assert_eq!(obj.decode(obj.value(x)), x);
                for &y in &all {
                    let lex = (x.score(), x.a).cmp(&(y.score(), y.a));
                    assert_eq!(obj.value(x).cmp(&obj.value(y)), lex, "n={n} {kind} {x} {y}");
                }
            }
        }
    }
}

/// Boards with at most eight coloured edges on up to seven vertices.
fn sparse_boards(rng: &mut StdRng, count: usize) -> Vec<ColoredBoard> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=7usize);
            let mut b = complete_board(n.max(2)).unwrap();
            if n == 1 {
                b = ColoredBoard::empty(1).unwrap();
            }
            let free: Vec<EdgeId> = b.uncolored_edges().collect();
            let k = rng.gen_range(0..=free.len().min(8));
            for _ in 0..k {
                let e = free[rng.gen_range(0..free.len())];
                if b.state(e) == EdgeState::Uncolored {
                    let c = if rng.gen_bool(0.5) { Colour::Red } else { Colour::Blue };
                    b = b.apply_move(e, c).unwrap();
                }
            }
            b
        })
        .collect()
}

#[test]
fn scores_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(5);
    for b in sparse_boards(&mut rng, 600) {
        for c in [Colour::Red, Colour::Blue] {
            assert_eq!(clique_score(&b, c), brute_clique(&b, c), "{b} {c:?}");
            assert_eq!(colex_score(&b, c), brute_colex(&b, c), "{b} {c:?}");
            assert_eq!(star_score(&b, c), brute_star(&b, c), "{b} {c:?}");
        }
    }
}

#[test]
fn colex_score_brackets_clique_number() {
    for n in [4usize, 5] {
        let k = complete_board(n).unwrap();
        let e = k.edge_slots();
        for mask in 0u32..(1 << e) {
            let b = (0..e).fold(k, |b, i| {
                let c = if mask >> i & 1 == 1 { Colour::Red } else { Colour::Blue };
                b.apply_move(EdgeId(i), c).unwrap()
            });
            for c in [Colour::Red, Colour::Blue] {
                let w = clique_score(&b, c);
                let x = colex_score(&b, c);
                if w >= 2 {
                    assert!(pairs(w) <= x && x < pairs(w + 1), "{b}: omega {w} colex {x}");
                } else {
                    assert_eq!(x, 0);
                }
            }
        }
    }
}

#[test]
fn empty_colour_classes() {
    let b = complete_board(5).unwrap();
    assert_eq!(clique_score(&b, Colour::Red), 1);
    assert_eq!(star_score(&b, Colour::Red), 0);
    assert_eq!(colex_score(&b, Colour::Red), 0);
    assert_eq!(vc_score(&b), Outcome::new(0, 0));
}
