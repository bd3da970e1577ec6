//! Backward induction over the generated layers.

use std::collections::HashMap;

use crate::board::{complete_board, ColoredBoard, Colour, EdgeId, EdgeState};
use crate::canonical::canonical_form;
use crate::error::{Error, Result};
use crate::game::{GameKind, GameSpec, Player};
use crate::generator::{build_layers_with, GenerateOptions, Layer, UNSET};
use crate::par;
use crate::scoring::{score, vc_score, winner, Objective, Outcome, Winner};

/// Largest number of free edges [`naive_minimax`] accepts.
pub const NAIVE_MAX_PLIES: usize = 16;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub generate: GenerateOptions,
    /// Keep the valued layers for move queries.
    pub retain_layers: bool,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub winner: Winner,
    /// Objective value of the start position.
    pub value: i32,
    pub layers: Option<Vec<Layer>>,
}

impl SolveResult {
    /// Number of positions per ply, when the layers were retained.
    pub fn layer_sizes(&self) -> Option<Vec<usize>> {
        self.layers.as_ref().map(|ls| ls.iter().map(Layer::len).collect())
    }
}

pub fn solve(spec: &GameSpec) -> Result<SolveResult> {
    solve_with(spec, &SolveOptions::default())
}

pub fn solve_with(spec: &GameSpec, opts: &SolveOptions) -> Result<SolveResult> {
    let mut layers = build_layers_with(spec, &opts.generate)?;
    let objective = Objective::for_game(spec.kind, spec.order());
    let exec = opts.generate.exec;

    let last = layers.last_mut().expect("at least the start layer");
    last.values = par::map_range(exec, last.len(), |i| objective.value(score(spec.kind, &last.board(i))));

    for t in (0..layers.len() - 1).rev() {
        let (head, tail) = layers.split_at_mut(t + 1);
        let (layer, next) = (&head[t], &tail[0]);
        let maximise = spec.mover_at(t) == Player::P1;
        let values = par::map_range(exec, layer.len(), |i| {
            let kids = layer.children_of(i).iter().map(|&c| next.values[c as usize]);
            if maximise {
                kids.max()
            } else {
                kids.min()
            }
            .expect("non-terminal entry has a successor")
        });
        head[t].values = values;
    }

    let value = layers[0].values[0];
    debug_assert_ne!(value, UNSET);
    let outcome = objective.decode(value);
    Ok(SolveResult {
        outcome,
        winner: winner(outcome, spec),
        value,
        layers: opts.retain_layers.then_some(layers),
    })
}

/// Value of an arbitrary position at ply `t`, looked up through its canonical form.
pub fn position_value(b: &ColoredBoard, t: usize, solved: &SolveResult) -> Result<i32> {
    let layers = solved
        .layers
        .as_ref()
        .ok_or_else(|| Error::Precondition("solve result has no retained layers".into()))?;
    let layer = layers
        .get(t)
        .ok_or_else(|| Error::Precondition(format!("ply {t} is past the end of the game")))?;
    let idx = layer
        .find(&canonical_form(b)?)
        .ok_or_else(|| Error::Precondition(format!("{b} is not a position of ply {t}")))?;
    Ok(layer.values[idx])
}

/// A value-preserving move for the player to move at ply `t`; ties go to
/// the lowest edge id.
pub fn best_move(b: &ColoredBoard, t: usize, spec: &GameSpec, solved: &SolveResult) -> Result<EdgeId> {
    if b.is_terminal() {
        return Err(Error::NoMove);
    }
    let target = position_value(b, t, solved)?;
    let colour = spec.mover_at(t).colour();
    for e in b.uncolored_edges() {
        if position_value(&b.apply_move(e, colour)?, t + 1, solved)? == target {
            return Ok(e);
        }
    }
    Err(Error::Internal(format!("no child of {b} attains its value {target}")))
}

/// Plain memoised minimax over labelled boards. Shares no code path with the
/// layered solver beyond scoring, and serves as its oracle.
pub fn naive_minimax(spec: &GameSpec) -> Result<Outcome> {
    let plies = spec.plies();
    if plies > NAIVE_MAX_PLIES {
        return Err(Error::Capacity(format!(
            "naive minimax handles at most {NAIVE_MAX_PLIES} free edges, got {plies}"
        )));
    }
    let objective = Objective::for_game(spec.kind, spec.order());
    let mut memo = HashMap::new();
    let v = minimax(spec, &objective, spec.initial_board(), 0, &mut memo);
    Ok(objective.decode(v))
}

fn minimax(spec: &GameSpec, obj: &Objective, b: ColoredBoard, t: usize, memo: &mut HashMap<u128, i32>) -> i32 {
    if let Some(&v) = memo.get(&b.bits()) {
        return v;
    }
    let free: Vec<EdgeId> = b.uncolored_edges().collect();
    let v = if free.is_empty() {
        obj.value(score(spec.kind, &b))
    } else {
        let mover = spec.mover_at(t);
        let vals = free.into_iter().map(|e| {
            let child = b.apply_move(e, mover.colour()).expect("free edge");
            minimax(spec, obj, child, t + 1, memo)
        });
        match mover {
            Player::P1 => vals.max(),
            Player::P2 => vals.min(),
        }
        .expect("at least one move")
    };
    memo.insert(b.bits(), v);
    v
}

/// Checks the pairing strategy for player 2 in the vertex-capturing game on
/// `K_n`, `n = 1 mod 4`: after player 1's first edge `uv`, player 2 plays the
/// optimal first-player strategy on the `K_{n-2}` spanned by the other
/// vertices and answers `ux` with `vx` (and vice versa). Every line of play
/// for player 1 is enumerated; returns whether player 2 never loses.
pub fn verify_vc_mirror(n: usize) -> Result<bool> {
    verify_vc_mirror_with(n, &SolveOptions::default(), 50_000_000)
}

pub fn verify_vc_mirror_with(n: usize, opts: &SolveOptions, max_lines: u64) -> Result<bool> {
    if n % 4 != 1 || n < 5 {
        return Err(Error::Precondition(format!("mirror strategy needs n = 1 mod 4 and n >= 5, got {n}")));
    }
    let sub_n = n - 2;
    let sub_spec = GameSpec::unbiased(complete_board(sub_n)?, GameKind::Vc)?;
    let mut sub_opts = *opts;
    sub_opts.retain_layers = true;
    let sub = solve_with(&sub_spec, &sub_opts)?;

    let full = complete_board(n)?;
    let mut lines = 0u64;
    for first in full.uncolored_edges() {
        let (u, v) = first.endpoints();
        let ctx = Mirror::new(n, u, v, &sub_spec, &sub);
        let board = full.apply_move(first, Colour::Red)?;
        let reply = ctx.reply(&board, first)?;
        let board = board.apply_move(reply, Colour::Blue)?;
        if !ctx.explore(board, &mut lines, max_lines)? {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Mirror<'a> {
    u: usize,
    v: usize,
    /// Full-board vertex of each sub-game vertex.
    outer: Vec<usize>,
    /// Sub-game vertex of each full-board vertex, `usize::MAX` for `u`, `v`.
    inner: Vec<usize>,
    sub_spec: &'a GameSpec,
    sub: &'a SolveResult,
}

impl<'a> Mirror<'a> {
    fn new(n: usize, u: usize, v: usize, sub_spec: &'a GameSpec, sub: &'a SolveResult) -> Self {
        let outer: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
        let mut inner = vec![usize::MAX; n];
        for (i, &x) in outer.iter().enumerate() {
            inner[x] = i;
        }
        Mirror { u, v, outer, inner, sub_spec, sub }
    }

    /// The sub-game position with player 2's edges as the sub-game's red.
    fn sub_board(&self, b: &ColoredBoard) -> Result<ColoredBoard> {
        let mut s = self.sub_spec.base;
        for (i, &x) in self.outer.iter().enumerate() {
            for (j, &y) in self.outer.iter().enumerate().take(i) {
                match b.state_between(x, y)? {
                    EdgeState::Blue => s = s.apply_move(crate::board::colex_index(i, j)?, Colour::Red)?,
                    EdgeState::Red => s = s.apply_move(crate::board::colex_index(i, j)?, Colour::Blue)?,
                    _ => {}
                }
            }
        }
        Ok(s)
    }

    fn reply(&self, b: &ColoredBoard, last: EdgeId) -> Result<EdgeId> {
        let (x, y) = last.endpoints();
        let touches = |w: usize| w == self.u || w == self.v;
        if (x, y) == (self.u.max(self.v), self.u.min(self.v)) || !(touches(x) || touches(y)) {
            // First move or a move inside the sub-game: play the optimal sub-game reply.
            let s = self.sub_board(b)?;
            let t = s.colored_count();
            let e = best_move(&s, t, self.sub_spec, self.sub)?;
            let (i, j) = e.endpoints();
            return crate::board::colex_index(self.outer[i], self.outer[j]);
        }
        let (hub, other) = if touches(x) { (x, y) } else { (y, x) };
        debug_assert_ne!(self.inner[other], usize::MAX);
        let partner = if hub == self.u { self.v } else { self.u };
        crate::board::colex_index(partner, other)
    }

    fn explore(&self, b: ColoredBoard, lines: &mut u64, max_lines: u64) -> Result<bool> {
        if b.is_terminal() {
            *lines += 1;
            if *lines > max_lines {
                return Err(Error::Capacity(format!("more than {max_lines} lines of play")));
            }
            let o = vc_score(&b);
            return Ok(o.b >= o.a);
        }
        for e in b.uncolored_edges() {
            let after = b.apply_move(e, Colour::Red)?;
            let next = if after.is_terminal() {
                after
            } else {
                let r = self.reply(&after, e)?;
                after.apply_move(r, Colour::Blue)?
            };
            if !self.explore(next, lines, max_lines)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
