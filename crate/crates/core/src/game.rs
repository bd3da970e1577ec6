//! Game descriptions: base graph, start colouring, scoring kind and move quotas.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::board::{colex_index, pairs, ColoredBoard, Colour, EdgeId, EdgeState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameKind {
    Clique,
    Star,
    Vc,
    Colex,
}

impl GameKind {
    pub const ALL: [GameKind; 4] = [GameKind::Clique, GameKind::Star, GameKind::Vc, GameKind::Colex];

    /// Upper bound on either player's score on an `n`-vertex board.
    pub fn score_cap(self, n: usize) -> u32 {
        match self {
            GameKind::Colex => pairs(n) as u32,
            _ => n as u32,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameKind::Clique => "clique",
            GameKind::Star => "star",
            GameKind::Vc => "vc",
            GameKind::Colex => "colex",
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "clique" => Ok(GameKind::Clique),
            "star" | "delta" => Ok(GameKind::Star),
            "vc" => Ok(GameKind::Vc),
            "colex" | "col" => Ok(GameKind::Colex),
            _ => Err(Error::Format(format!("unknown game kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn colour(self) -> Colour {
        match self {
            Player::P1 => Colour::Red,
            Player::P2 => Colour::Blue,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::P1 => "P1",
            Player::P2 => "P2",
        })
    }
}

/// Per-turn quotas: player 1 colours `p` edges, player 2 colours `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bias {
    pub p: u32,
    pub q: u32,
}

impl Bias {
    pub const UNBIASED: Bias = Bias { p: 1, q: 1 };

    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Precondition("move quotas must be positive".into()));
        }
        Ok(Bias { p, q })
    }

    /// Mover at ply `t` (one edge per ply): player 1 iff `t mod (p + q) < p`.
    pub fn mover_at(&self, t: usize) -> Player {
        if (t % (self.p + self.q) as usize) < self.p as usize {
            Player::P1
        } else {
            Player::P2
        }
    }
}

impl Default for Bias {
    fn default() -> Self {
        Bias::UNBIASED
    }
}

impl FromStr for Bias {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once(',')
            .ok_or_else(|| Error::Format(format!("bias must look like 'p,q', got {s:?}")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Format(format!("bad quota {x:?}")))
        };
        Bias::new(parse(p)?, parse(q)?)
    }
}

pub fn mover_at(t: usize, schedule: Bias) -> Player {
    schedule.mover_at(t)
}

/// A fully specified game.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameSpec {
    /// Base graph; every present edge is uncoloured.
    pub base: ColoredBoard,
    /// Pre-coloured edges in place before ply 0.
    pub start: Vec<(EdgeId, Colour)>,
    pub kind: GameKind,
    pub bias: Bias,
}

impl GameSpec {
    pub fn new(base: ColoredBoard, start: Vec<(EdgeId, Colour)>, kind: GameKind, bias: Bias) -> Result<Self> {
        let base = base.base();
        if base.present_count() == 0 {
            return Err(Error::DegenerateBoard("base graph has no edges".into()));
        }
        let mut seen = Vec::with_capacity(start.len());
        for &(e, _) in &start {
            if e.0 >= base.edge_slots() || base.state(e) != EdgeState::Uncolored {
                return Err(Error::Precondition(format!("start edge {e} is not in the base graph")));
            }
            if seen.contains(&e) {
                return Err(Error::Precondition(format!("start edge {e} listed twice")));
            }
            seen.push(e);
        }
        Ok(GameSpec { base, start, kind, bias })
    }

    pub fn unbiased(base: ColoredBoard, kind: GameKind) -> Result<Self> {
        Self::new(base, Vec::new(), kind, Bias::UNBIASED)
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    /// The base graph with the start colouring applied.
    pub fn initial_board(&self) -> ColoredBoard {
        self.start
            .iter()
            .fold(self.base, |b, &(e, c)| b.apply_move(e, c).expect("validated start edge"))
    }

    /// Number of plies played from the initial board to the end.
    pub fn plies(&self) -> usize {
        self.initial_board().uncolored_count()
    }

    pub fn mover_at(&self, t: usize) -> Player {
        self.bias.mover_at(t)
    }
}

/// Parses a start list such as `0-1:R,0-2:R,1-2:B`.
pub fn parse_start(s: &str) -> Result<Vec<(EdgeId, Colour)>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (pair, col) = item
            .split_once(':')
            .ok_or_else(|| Error::Format(format!("start item {item:?} must look like 'u-v:R'")))?;
        let (u, v) = pair
            .split_once('-')
            .ok_or_else(|| Error::Format(format!("start pair {pair:?} must look like 'u-v'")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Format(format!("bad vertex {x:?}")))
        };
        let colour = match col.trim() {
            "R" | "r" => Colour::Red,
            "B" | "b" => Colour::Blue,
            other => return Err(Error::Format(format!("colour must be R or B, got {other:?}"))),
        };
        out.push((colex_index(parse(u)?, parse(v)?)?, colour));
    }
    Ok(out)
}

/// Inverse of [`parse_start`].
pub fn format_start(start: &[(EdgeId, Colour)]) -> String {
    start.iter().map(|(e, c)| format!("{e}:{}", c.letter())).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::complete_board;

    #[test]
    fn unbiased_alternates() {
        let s = Bias::UNBIASED;
        let movers: Vec<_> = (0..6).map(|t| s.mover_at(t)).collect();
        assert_eq!(movers, [Player::P1, Player::P2, Player::P1, Player::P2, Player::P1, Player::P2]);
    }

    #[test]
    fn biased_schedule() {
        let s = Bias::new(1, 3).unwrap();
        let movers: Vec<_> = (0..5).map(|t| mover_at(t, s)).collect();
        assert_eq!(movers, [Player::P1, Player::P2, Player::P2, Player::P2, Player::P1]);
        assert!(Bias::new(0, 1).is_err());
        assert_eq!("2,3".parse::<Bias>().unwrap(), Bias { p: 2, q: 3 });
        assert!("2".parse::<Bias>().is_err());
    }

    #[test]
    fn start_configurations() {
        let start = parse_start("0-1:R,0-2:R,1-2:R").unwrap();
        let spec = GameSpec::new(complete_board(8).unwrap(), start, GameKind::Clique, Bias::UNBIASED).unwrap();
        assert_eq!(spec.initial_board().count(EdgeState::Red), 3);
        assert_eq!(spec.plies(), 25);
        assert_eq!(format_start(&spec.start), "0-1:R,0-2:R,1-2:R");

        let dup = parse_start("0-1:R,1-0:B").unwrap();
        assert!(GameSpec::new(complete_board(4).unwrap(), dup, GameKind::Clique, Bias::UNBIASED).is_err());
        let absent = parse_start("3-4:R").unwrap();
        assert!(GameSpec::new(complete_board(4).unwrap(), absent, GameKind::Clique, Bias::UNBIASED).is_err());
        assert!(parse_start("0-1:G").is_err());
        assert!(parse_start("0-0:R").is_err());
    }
}
