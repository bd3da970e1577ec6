//! Constructive strategies for player 2 and an exhaustive verifier that plays
//! them against every possible sequence of player 1 moves.

mod bob12;
mod bob13;

use std::collections::HashSet;
use std::fmt;

use crate::board::{ColoredBoard, Colour, EdgeId, EdgeState};
use crate::error::{Error, Result};
use crate::game::{Bias, GameSpec, Player};
use crate::par::{self, Execution};
use crate::scoring::{score, Outcome};

pub use bob12::{bob12_respond, Bob12};
pub use bob13::{bob13_respond, Bob13, Label, Phase, StrategyMemory};

/// A player 2 strategy for games where player 1 colours one edge per turn.
pub trait Responder: Clone + Send + Sync {
    fn name(&self) -> &'static str;

    fn bias(&self) -> Bias;

    /// Player 2's edges for this turn. `board` already holds player 1's red
    /// `alice` edge; the returned edges are uncoloured, distinct and exactly
    /// `min(q, uncoloured)` many.
    fn respond(&mut self, board: &ColoredBoard, alice: EdgeId) -> Result<Vec<EdgeId>>;

    /// Internal state, used to merge identical positions during verification.
    fn memory_key(&self) -> Vec<u8> {
        Vec::new()
    }

    /// Strategy-specific invariant check after each turn; `Err` describes a violation.
    fn audit(&self, _board: &ColoredBoard, _terminal: bool) -> std::result::Result<(), String> {
        Ok(())
    }
}

/// Drops already-coloured and repeated edges from `prescribed`, then fills up
/// to `min(quota, uncoloured)` with the lowest uncoloured edges, taking those
/// accepted by `prefer` first.
pub(crate) fn pad(
    board: &ColoredBoard,
    prescribed: &[EdgeId],
    quota: usize,
    prefer: impl Fn(EdgeId) -> bool,
) -> Result<Vec<EdgeId>> {
    let mut out: Vec<EdgeId> = Vec::with_capacity(quota);
    for &e in prescribed {
        if board.state(e) == EdgeState::Uncolored && !out.contains(&e) {
            out.push(e);
        }
    }
    if out.len() > quota {
        return Err(Error::Internal(format!("{} prescribed edges exceed quota {quota}", out.len())));
    }
    let want = quota.min(board.uncolored_count());
    for pass in [true, false] {
        for e in board.uncolored_edges() {
            if out.len() == want {
                return Ok(out);
            }
            if !out.contains(&e) && (!pass || prefer(e)) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub mover: Player,
    pub edge: EdgeId,
    pub colour: Colour,
}

/// A losing or illegal line of play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trace: Vec<TraceStep>,
    /// Final scores, absent when the line stopped at an illegal response.
    pub outcome: Option<Outcome>,
    pub reason: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.reason)?;
        for s in &self.trace {
            write!(f, " {}{}", s.edge, s.colour.letter())?;
        }
        if let Some(o) = self.outcome {
            write!(f, " => {o}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyReport {
    pub verified: bool,
    /// Terminal lines scored; merged positions count once.
    pub lines_checked: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub exec: Execution,
    /// Skip positions whose (board, strategy memory) pair was already verified.
    pub dedup: bool,
    pub max_lines: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { exec: Execution::Parallel, dedup: false, max_lines: 500_000_000 }
    }
}

pub fn verify_strategy<R, P>(strategy: &R, spec: &GameSpec, win: P) -> Result<StrategyReport>
where
    R: Responder,
    P: Fn(Outcome) -> bool + Sync,
{
    verify_strategy_with(strategy, spec, win, &VerifyOptions::default())
}

/// Plays `strategy` against every sequence of player 1 moves from the spec's
/// initial board and checks `win` on every terminal board.
pub fn verify_strategy_with<R, P>(strategy: &R, spec: &GameSpec, win: P, opts: &VerifyOptions) -> Result<StrategyReport>
where
    R: Responder,
    P: Fn(Outcome) -> bool + Sync,
{
    if strategy.bias() != spec.bias {
        return Err(Error::Precondition(format!(
            "{} plays bias ({},{}), game has ({},{})",
            strategy.name(),
            strategy.bias().p,
            strategy.bias().q,
            spec.bias.p,
            spec.bias.q
        )));
    }
    if spec.bias.p != 1 {
        return Err(Error::Precondition("strategies answer single player 1 edges".into()));
    }
    let root = spec.initial_board();
    let v = Verifier { spec, win: &win, opts };
    if root.is_terminal() {
        let mut lines = 0;
        let cex = v.terminal(&root, strategy, &[], &mut lines);
        return Ok(report(lines, cex));
    }

    let firsts: Vec<EdgeId> = root.uncolored_edges().collect();
    let branches = par::map(opts.exec, &firsts, |&e| {
        let mut lines = 0u64;
        let mut memo = HashSet::new();
        let mut trace = Vec::new();
        v.alice(&root, e, strategy, &mut trace, &mut memo, &mut lines).map(|c| (lines, c))
    });
    let mut lines = 0u64;
    let mut cex = None;
    for b in branches {
        let (l, c) = b?;
        lines += l;
        if cex.is_none() {
            cex = c;
        }
    }
    if lines > opts.max_lines {
        return Err(Error::Capacity(format!("more than {} lines of play", opts.max_lines)));
    }
    Ok(report(lines, cex))
}

fn report(lines_checked: u64, counterexample: Option<Counterexample>) -> StrategyReport {
    StrategyReport { verified: counterexample.is_none(), lines_checked, counterexample }
}

struct Verifier<'a, P> {
    spec: &'a GameSpec,
    win: &'a P,
    opts: &'a VerifyOptions,
}

type Memo = HashSet<(u128, Vec<u8>)>;

impl<P: Fn(Outcome) -> bool + Sync> Verifier<'_, P> {
    fn terminal<R: Responder>(&self, b: &ColoredBoard, s: &R, trace: &[TraceStep], lines: &mut u64) -> Option<Counterexample> {
        *lines += 1;
        let o = score(self.spec.kind, b);
        let reason = if let Err(msg) = s.audit(b, true) {
            msg
        } else if !(self.win)(o) {
            "player 2 does not win".to_string()
        } else {
            return None;
        };
        Some(Counterexample { trace: trace.to_vec(), outcome: Some(o), reason })
    }

    /// Player 1 to move on `b`; explores every choice.
    fn turn<R: Responder>(
        &self,
        b: &ColoredBoard,
        s: &R,
        trace: &mut Vec<TraceStep>,
        memo: &mut Memo,
        lines: &mut u64,
    ) -> Result<Option<Counterexample>> {
        if b.is_terminal() {
            return Ok(self.terminal(b, s, trace, lines));
        }
        let key = self.opts.dedup.then(|| (b.bits(), s.memory_key()));
        if key.as_ref().is_some_and(|k| memo.contains(k)) {
            return Ok(None);
        }
        for e in b.uncolored_edges() {
            if let Some(c) = self.alice(b, e, s, trace, memo, lines)? {
                return Ok(Some(c));
            }
        }
        if let Some(k) = key {
            memo.insert(k);
        }
        Ok(None)
    }

    fn alice<R: Responder>(
        &self,
        b: &ColoredBoard,
        e: EdgeId,
        s: &R,
        trace: &mut Vec<TraceStep>,
        memo: &mut Memo,
        lines: &mut u64,
    ) -> Result<Option<Counterexample>> {
        if *lines > self.opts.max_lines {
            return Err(Error::Capacity(format!("more than {} lines of play", self.opts.max_lines)));
        }
        let depth = trace.len();
        let mut board = b.apply_move(e, Colour::Red)?;
        trace.push(TraceStep { mover: Player::P1, edge: e, colour: Colour::Red });
        let result = if board.is_terminal() {
            Ok(self.terminal(&board, s, trace, lines))
        } else {
            let mut s = s.clone();
            match self.reply(&mut board, e, &mut s, trace) {
                Err(reason) => Ok(Some(Counterexample { trace: trace.clone(), outcome: None, reason })),
                Ok(()) => self.turn(&board, &s, trace, memo, lines),
            }
        };
        trace.truncate(depth);
        result
    }

    fn reply<R: Responder>(
        &self,
        board: &mut ColoredBoard,
        alice: EdgeId,
        s: &mut R,
        trace: &mut Vec<TraceStep>,
    ) -> std::result::Result<(), String> {
        let edges = s.respond(board, alice).map_err(|e| format!("strategy error: {e}"))?;
        let want = (self.spec.bias.q as usize).min(board.uncolored_count());
        if edges.len() != want {
            return Err(format!("{} edges returned, quota is {want}", edges.len()));
        }
        for e in edges {
            if e.0 >= board.edge_slots() || board.state(e) != EdgeState::Uncolored {
                return Err(format!("illegal edge {e}"));
            }
            *board = board.apply_move(e, Colour::Blue).map_err(|e| e.to_string())?;
            trace.push(TraceStep { mover: Player::P2, edge: e, colour: Colour::Blue });
        }
        s.audit(board, false)
    }
}

/// Number of terminal lines when player 1 may pick any uncoloured edge and
/// player 2 always colours `q` edges: the product of player 1's choice counts.
pub fn expected_lines(edges: usize, q: usize) -> u64 {
    let mut left = edges;
    let mut lines = 1u64;
    while left > 0 {
        lines *= left as u64;
        left = left.saturating_sub(1 + q);
    }
    lines
}
