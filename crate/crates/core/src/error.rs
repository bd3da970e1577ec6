use thiserror::Error;

use crate::board::EdgeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("degenerate board: {0}")]
    DegenerateBoard(String),

    #[error("illegal move on edge {edge}: {reason}")]
    IllegalMove { edge: EdgeId, reason: &'static str },

    #[error("format error: {0}")]
    Format(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),

    #[error("no legal move: position is terminal")]
    NoMove,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
