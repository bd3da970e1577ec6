//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use graphgame::{colex_board, ColoredBoard, Colour, EdgeState, GameSpec};
use rand::rngs::StdRng;
use rand::Rng;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn brute_isomorphic(x: &ColoredBoard, y: &ColoredBoard) -> bool {
    x.order() == y.order() && permutations(x.order()).iter().any(|p| x.permuted(p) == *y)
}

pub fn automorphisms(b: &ColoredBoard) -> Vec<Vec<usize>> {
    permutations(b.order()).into_iter().filter(|p| b.permuted(p) == *b).collect()
}

pub fn random_board(rng: &mut StdRng, n: usize) -> ColoredBoard {
    let mut bits = 0u128;
    for i in 0..n * (n.saturating_sub(1)) / 2 {
        bits |= (rng.gen_range(0..4u128)) << (2 * i);
    }
    ColoredBoard::from_bits(n, bits).expect("valid board")
}

pub fn random_permutation(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn colour_adj(b: &ColoredBoard, c: Colour) -> Vec<Vec<bool>> {
    let n = b.order();
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                adj[u][v] = b.state_between(u, v).unwrap() == c.state();
            }
        }
    }
    adj
}

pub fn brute_clique(b: &ColoredBoard, c: Colour) -> u32 {
    let n = b.order();
    let adj = colour_adj(b, c);
    let mut best = 1;
    for set in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|v| set >> v & 1 == 1).collect();
        if vs.iter().all(|&u| vs.iter().all(|&w| u == w || adj[u][w])) {
            best = best.max(vs.len() as u32);
        }
    }
    best
}

/// Whether the edge list embeds (not necessarily induced) into `adj`.
fn embeds(edges: &[(usize, usize)], k: usize, adj: &[Vec<bool>]) -> bool {
    fn go(map: &mut Vec<usize>, k: usize, edges: &[(usize, usize)], adj: &[Vec<bool>]) -> bool {
        if map.len() == k {
            return edges.iter().all(|&(u, v)| adj[map[u]][map[v]]);
        }
        for x in 0..adj.len() {
            if !map.contains(&x) {
                map.push(x);
                // Check the edges whose endpoints are both placed.
                let ok = edges.iter().all(|&(u, v)| u >= map.len() || v >= map.len() || adj[map[u]][map[v]]);
                if ok && go(map, k, edges, adj) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    k <= adj.len() && go(&mut Vec::new(), k, edges, adj)
}

pub fn brute_colex(b: &ColoredBoard, c: Colour) -> u32 {
    let adj = colour_adj(b, c);
    let mut m = 0;
    loop {
        let next = m + 1;
        let g = colex_board(next).unwrap();
        let edges: Vec<(usize, usize)> = g.edges_in_state(EdgeState::Uncolored).map(|e| e.endpoints()).collect();
        if !embeds(&edges, g.order(), &adj) {
            return m as u32;
        }
        m = next;
    }
}

pub fn brute_star(b: &ColoredBoard, c: Colour) -> u32 {
    colour_adj(b, c).iter().map(|r| r.iter().filter(|&&x| x).count() as u32).max().unwrap_or(0)
}

/// Distinct exact boards per ply, by plain breadth-first search.
pub fn raw_layers(spec: &GameSpec) -> Vec<HashSet<ColoredBoard>> {
    let mut layers = vec![HashSet::from([spec.initial_board()])];
    for t in 0..spec.plies() {
        let colour = spec.mover_at(t).colour();
        let next: HashSet<ColoredBoard> = layers[t]
            .iter()
            .flat_map(|b| b.uncolored_edges().map(move |e| b.apply_move(e, colour).unwrap()).collect::<Vec<_>>())
            .collect();
        layers.push(next);
    }
    layers
}
