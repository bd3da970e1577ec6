use std::fmt;
use std::path::Path;

use clap::{Args, ValueEnum};
use graphgame::board::read_edge_list;
use graphgame::game::parse_start;
use graphgame::{colex_board, complete_board, Bias, ColoredBoard, GameKind, GameSpec};

/// Command failure, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// A check ran and failed.
    Failed(String),
    Usage(String),
    Capacity(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) | CliError::Other(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) | CliError::Usage(m) | CliError::Capacity(m) | CliError::Other(m) => f.write_str(m),
        }
    }
}

impl From<graphgame::Error> for CliError {
    fn from(e: graphgame::Error) -> Self {
        use graphgame::Error as E;
        match e {
            E::Capacity(_) => CliError::Capacity(e.to_string()),
            E::InvalidEdge(..) | E::DegenerateBoard(_) | E::Format(_) | E::Precondition(_) | E::Dimension(..) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// clique | star | vc | colex
    #[arg(long)]
    pub game: String,
    /// `Kn`, `Cm` or `file:PATH` (edge list: vertex count, then one `u v` per line).
    #[arg(long)]
    pub base: String,
    /// Edges per turn for player 1 and player 2.
    #[arg(long, default_value = "1,1")]
    pub bias: String,
    /// Pre-coloured edges, e.g. `0-1:R,0-2:R`.
    #[arg(long, default_value = "")]
    pub start: String,
}

impl GameArgs {
    pub fn spec(&self) -> CliResult<GameSpec> {
        let kind: GameKind = self.game.parse()?;
        let base = parse_base(&self.base)?;
        let bias: Bias = self.bias.parse()?;
        let start = parse_start(&self.start)?;
        Ok(GameSpec::new(base, start, kind, bias)?)
    }
}

pub fn parse_base(s: &str) -> CliResult<ColoredBoard> {
    if let Some(path) = s.strip_prefix("file:") {
        return read_edge_list(Path::new(path)).map_err(|e| match e {
            graphgame::Error::Io(m) => CliError::Usage(format!("cannot read {path}: {m}")),
            other => other.into(),
        });
    }
    let bad = || CliError::Usage(format!("base must be Kn, Cm or file:PATH, got {s:?}"));
    let (head, num) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let k: usize = num.parse().map_err(|_| bad())?;
    let board = match head {
        "K" | "k" => complete_board(k)?,
        "C" | "c" => colex_board(k)?,
        _ => return Err(bad()),
    };
    Ok(board)
}

/// Inclusive `LO..HI` (also `LO..=HI` or a single number).
pub fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("range must look like LO..HI, got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    /// (1,3) Clique strategy for player 2.
    Bob13,
    /// (1,2) triple strategy for player 2, checked on Star and VC.
    Bob12,
    /// Pairing strategy for player 2 in unbiased VC, n = 1 mod 4.
    VcMirror,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Human {
    Alice,
    Bob,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases() {
        assert_eq!(parse_base("K4").unwrap().present_count(), 6);
        assert_eq!(parse_base("C7").unwrap().present_count(), 7);
        assert!(matches!(parse_base("Q4"), Err(CliError::Usage(_))));
        assert!(matches!(parse_base("K"), Err(CliError::Usage(_))));
        assert!(matches!(parse_base("K40"), Err(CliError::Usage(_)) | Err(CliError::Capacity(_))));
        assert!(matches!(parse_base("file:/nonexistent"), Err(CliError::Usage(_))));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..16").unwrap(), (1, 16));
        assert_eq!(parse_range("3..=5").unwrap(), (3, 5));
        assert_eq!(parse_range("12").unwrap(), (12, 12));
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x..3").is_err());
    }
}
