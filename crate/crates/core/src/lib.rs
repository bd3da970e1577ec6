//! Exact solving and strategy verification for two-player edge-colouring
//! score games (Clique, Star, vertex-capturing and Colex) on small graphs.
//!
//! Positions are [`ColoredBoard`]s. The [`generator`] builds every position
//! reachable from a [`GameSpec`] up to isomorphism, one layer per ply, and the
//! [`solver`] values those layers backwards from the scored terminal layer.

pub mod board;
pub mod cache;
pub mod canonical;
pub mod error;
pub mod game;
pub mod generator;
pub mod par;
pub mod scoring;
pub mod solver;
pub mod strategies;

pub use board::{colex_board, colex_index, complete_board, edge_endpoints, ColoredBoard, Colour, EdgeId, EdgeState};
pub use cache::{CacheRecord, ResultCache};
pub use canonical::{canonical_form, edge_orbits, is_isomorphic, CanonicalForm, OrbitPartition};
pub use error::{Error, Result};
pub use game::{Bias, GameKind, GameSpec, Player};
pub use generator::{build_layers, successors, Layer};
pub use par::Execution;
pub use scoring::{objective, winner, Outcome, Winner};
pub use solver::{best_move, naive_minimax, solve, solve_with, verify_vc_mirror, SolveOptions, SolveResult};
pub use strategies::{bob12_respond, bob13_respond, verify_strategy, Bob12, Bob13, Responder, StrategyMemory, StrategyReport};
