//! Terminal scores for the four game kinds and the objective order used by the
//! solver.

use serde::{Deserialize, Serialize};

use crate::board::{pairs, ColoredBoard, Colour, MAX_ORDER};
use crate::game::{GameKind, GameSpec};

/// Final scores of player 1 (`a`) and player 2 (`b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Outcome {
    pub a: u32,
    pub b: u32,
}

impl Outcome {
    pub fn new(a: u32, b: u32) -> Self {
        Outcome { a, b }
    }

    /// `s = a - b`.
    pub fn score(&self) -> i32 {
        self.a as i32 - self.b as i32
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    P1,
    P2,
}

impl std::fmt::Display for Winner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Winner::P1 => "P1",
            Winner::P2 => "P2",
        })
    }
}

/// Encodes outcomes as `f = (C + 1) a - C b = C s + a`, where `C` exceeds every
/// attainable score. Larger `f` means larger `s`, ties broken by larger `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Objective {
    c: i32,
}

impl Objective {
    /// Scale for scores in `0..=cap`.
    pub fn with_cap(cap: u32) -> Self {
        Objective { c: cap as i32 + 1 }
    }

    pub fn for_game(kind: GameKind, n: usize) -> Self {
        Self::with_cap(kind.score_cap(n))
    }

    pub fn c(&self) -> i32 {
        self.c
    }

    #[inline]
    pub fn value(&self, o: Outcome) -> i32 {
        (self.c + 1) * o.a as i32 - self.c * o.b as i32
    }

    /// Inverse of [`value`](Self::value).
    #[inline]
    pub fn decode(&self, f: i32) -> Outcome {
        let s = f.div_euclid(self.c);
        let a = f.rem_euclid(self.c);
        Outcome { a: a as u32, b: (a - s) as u32 }
    }
}

/// `f = (n + 2) a - (n + 1) b`, the objective for scores bounded by `n`.
pub fn objective(o: Outcome, n: usize) -> i32 {
    Objective::with_cap(n as u32).value(o)
}

/// Win label: with equal quotas player 1 needs `a > b`; otherwise the player
/// with the larger quota needs a strict win.
pub fn winner(o: Outcome, spec: &GameSpec) -> Winner {
    let (p, q) = (spec.bias.p, spec.bias.q);
    if q > p {
        if o.b > o.a {
            Winner::P2
        } else {
            Winner::P1
        }
    } else if o.a > o.b {
        Winner::P1
    } else {
        Winner::P2
    }
}

fn colour_adjacency(b: &ColoredBoard, c: Colour) -> [u16; MAX_ORDER] {
    b.adjacency(c.state())
}

/// Clique number of the spanning subgraph formed by colour `c`. A colour
/// class without edges still has single-vertex cliques, so the minimum is 1.
pub fn clique_score(b: &ColoredBoard, c: Colour) -> u32 {
    let adj = colour_adjacency(b, c);
    max_clique(&adj, b.order()).max(1)
}

/// Maximum degree in colour `c`.
pub fn star_score(b: &ColoredBoard, c: Colour) -> u32 {
    let adj = colour_adjacency(b, c);
    adj[..b.order()].iter().map(|m| m.count_ones()).max().unwrap_or(0)
}

/// Vertices with strictly more red than blue incident edges go to player 1,
/// and the reverse to player 2.
pub fn vc_score(b: &ColoredBoard) -> Outcome {
    let red = colour_adjacency(b, Colour::Red);
    let blue = colour_adjacency(b, Colour::Blue);
    let mut o = Outcome::new(0, 0);
    for v in 0..b.order() {
        let (r, bl) = (red[v].count_ones(), blue[v].count_ones());
        if r > bl {
            o.a += 1;
        } else if bl > r {
            o.b += 1;
        }
    }
    o
}

/// Largest `m` such that the Colex graph `C(m)` is a subgraph of colour `c`.
///
/// `C(m)` with `m = C(k, 2) + j`, `j < k`, is a `K_k` plus one vertex joined
/// to `j` of its vertices. Any `C(m)` built on a smaller clique has fewer
/// than `C(omega, 2)` edges, so only maximum cliques matter.
pub fn colex_score(b: &ColoredBoard, c: Colour) -> u32 {
    let n = b.order();
    let adj = colour_adjacency(b, c);
    let omega = max_clique(&adj, n);
    if omega < 2 {
        return 0;
    }
    let all = (1u16 << n) - 1;
    let mut best_extra = 0;
    for_each_clique_of_size(&adj, omega as usize, all, |clique| {
        for v in 0..n {
            if clique & (1 << v) == 0 {
                best_extra = best_extra.max((adj[v] & clique).count_ones());
            }
        }
    });
    pairs(omega as usize) as u32 + best_extra
}

pub fn score(kind: GameKind, b: &ColoredBoard) -> Outcome {
    match kind {
        GameKind::Clique => Outcome::new(clique_score(b, Colour::Red), clique_score(b, Colour::Blue)),
        GameKind::Star => Outcome::new(star_score(b, Colour::Red), star_score(b, Colour::Blue)),
        GameKind::Vc => vc_score(b),
        GameKind::Colex => Outcome::new(colex_score(b, Colour::Red), colex_score(b, Colour::Blue)),
    }
}

/// Branch and bound with a greedy-colouring bound.
fn max_clique(adj: &[u16; MAX_ORDER], n: usize) -> u32 {
    fn colour_bound(adj: &[u16; MAX_ORDER], mut cand: u16) -> u32 {
        let mut colours = 0;
        while cand != 0 {
            colours += 1;
            let mut avail = cand;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v) & !adj[v];
                cand &= !(1 << v);
            }
        }
        colours
    }
    fn expand(adj: &[u16; MAX_ORDER], size: u32, mut cand: u16, best: &mut u32) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + colour_bound(adj, cand) <= *best {
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            expand(adj, size + 1, cand & adj[v], best);
        }
    }
    let mut best = 0;
    let all = if n == 0 { 0 } else { u16::MAX >> (16 - n) };
    expand(adj, 0, all, &mut best);
    best
}

fn for_each_clique_of_size(adj: &[u16; MAX_ORDER], k: usize, cand: u16, mut f: impl FnMut(u16)) {
    fn rec(adj: &[u16; MAX_ORDER], k: usize, chosen: u16, mut cand: u16, f: &mut dyn FnMut(u16)) {
        if chosen.count_ones() as usize == k {
            f(chosen);
            return;
        }
        while cand != 0 {
            if (chosen.count_ones() + cand.count_ones()) < k as u32 {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            rec(adj, k, chosen | (1 << v), cand & adj[v], f);
        }
    }
    rec(adj, k, 0, cand, &mut f);
}
