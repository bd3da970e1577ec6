//! Player 2 strategy for the (1,2) Star and vertex-capturing games.
//!
//! Write `n = 3k + r`. Vertex `3i + c` is `u_i`, `v_i`, `w_i` for `c = 0, 1, 2`;
//! the leftover vertices are `x = 3k` and `y = 3k + 1`. The edges other than
//! `xy` split into triples
//!
//! * `{u_i u_j, v_i v_j, w_i w_j}` for `i < j`,
//! * `{u_i v_i, u_i w_i, v_i w_i}`,
//! * `{u_i v_j, v_i w_j, w_i u_j}` for `i != j`,
//! * `{x u_i, x v_i, x w_i}` and `{y u_i, y v_i, y w_i}`,
//!
//! and player 2 answers any edge with the rest of its triple. Every vertex
//! then carries at least twice as many blue as red edges, apart from `xy`.

use crate::board::{colex_index, ColoredBoard, EdgeId};
use crate::error::{Error, Result};
use crate::game::Bias;

use super::{pad, Responder};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Bob12;

impl Responder for Bob12 {
    fn name(&self) -> &'static str {
        "bob12"
    }

    fn bias(&self) -> Bias {
        Bias { p: 1, q: 2 }
    }

    fn respond(&mut self, board: &ColoredBoard, alice: EdgeId) -> Result<Vec<EdgeId>> {
        bob12_respond(board, alice)
    }
}

/// Vertex of class `c` (0..3 for U, V, W) and index `i`.
fn vertex(c: usize, i: usize) -> usize {
    3 * i + c
}

fn edge(a: usize, b: usize) -> Result<EdgeId> {
    colex_index(a.max(b), a.min(b))
}

/// The triple containing `e`, or `None` for the uncovered edge `xy`.
pub(crate) fn triple(n: usize, e: EdgeId) -> Result<Option<[EdgeId; 3]>> {
    let k = n / 3;
    let (p, q) = e.endpoints();
    if p >= n {
        return Err(Error::InvalidEdge(p, q));
    }
    let (hi, lo) = (p.max(q), p.min(q));
    if lo >= 3 * k {
        return Ok(None);
    }
    let (c1, i) = (lo % 3, lo / 3);
    if hi >= 3 * k {
        return Ok(Some([edge(hi, vertex(0, i))?, edge(hi, vertex(1, i))?, edge(hi, vertex(2, i))?]));
    }
    let (c2, j) = (hi % 3, hi / 3);
    let t = if c1 == c2 {
        [edge(vertex(0, i), vertex(0, j))?, edge(vertex(1, i), vertex(1, j))?, edge(vertex(2, i), vertex(2, j))?]
    } else if i == j {
        [edge(vertex(0, i), vertex(1, i))?, edge(vertex(0, i), vertex(2, i))?, edge(vertex(1, i), vertex(2, i))?]
    } else {
        // Members of the (a, b) triple run from (class c, a) to (class c + 1, b).
        let (a, b) = if c2 == (c1 + 1) % 3 { (i, j) } else { (j, i) };
        [
            edge(vertex(0, a), vertex(1, b))?,
            edge(vertex(1, a), vertex(2, b))?,
            edge(vertex(2, a), vertex(0, b))?,
        ]
    };
    Ok(Some(t))
}

/// The two other edges of the triple holding player 1's edge, skipping any
/// already coloured and padded with the lowest uncoloured edges.
pub fn bob12_respond(board: &ColoredBoard, alice: EdgeId) -> Result<Vec<EdgeId>> {
    let n = board.order();
    if n < 3 {
        return Err(Error::Precondition(format!("bob12 needs n >= 3, got {n}")));
    }
    let prescribed: Vec<EdgeId> = match triple(n, alice)? {
        Some(t) => {
            if !t.contains(&alice) {
                return Err(Error::Internal(format!("edge {alice} missing from its triple")));
            }
            t.into_iter().filter(|&e| e != alice).collect()
        }
        None => Vec::new(),
    };
    pad(board, &prescribed, 2, |_| true)
}
