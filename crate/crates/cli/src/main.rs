//! `graphgame`: solve edge-colouring score games, reproduce the Colex table,
//! and check constructive strategies.

mod args;
mod commands;
mod play;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use args::{GameArgs, Human, StrategyName};

#[derive(Debug, Parser)]
#[command(name = "graphgame", version, about = "Exact solver for edge-colouring score games")]
struct Cli {
    /// Worker threads for generation and solving (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Append-only result cache (JSON lines).
    #[arg(long, global = true, env = "GRAPHGAME_CACHE")]
    cache: Option<PathBuf>,

    /// Abort a solve once this many positions have been generated.
    #[arg(long, global = true, default_value_t = commands::DEFAULT_MAX_STATES)]
    max_states: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one game and print its optimal outcome.
    Solve(GameArgs),
    /// Outcomes of the Colex, Star and vertex-capturing games on C(m), as CSV.
    Table {
        /// Inclusive range such as `1..16`.
        #[arg(long, default_value = "1..16")]
        m_range: String,
        /// Comma list drawn from col, delta, vc.
        #[arg(long, default_value = "col,delta,vc")]
        games: String,
    },
    /// Print the number of positions per ply.
    Generate {
        #[command(flatten)]
        game: GameArgs,
        /// Write every layer as a binary dump into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Play a strategy against every line of player 1 moves.
    VerifyStrategy {
        #[arg(long, value_enum)]
        strategy: StrategyName,
        #[arg(long)]
        n: usize,
        /// Merge repeated (board, memory) positions.
        #[arg(long)]
        dedup: bool,
    },
    /// Play against the solved engine in the terminal.
    Play {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value_t = Human::Alice)]
        human: Human,
    },
    /// Compare the solver against plain minimax on small boards.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context { cache: cli.cache.clone(), max_states: cli.max_states };
    let result = graphgame::par::with_threads(cli.threads, || match cli.command {
        Command::Solve(g) => commands::solve(&ctx, &g),
        Command::Table { m_range, games } => commands::table(&ctx, &m_range, &games),
        Command::Generate { game, dump } => commands::generate(&ctx, &game, dump.as_deref()),
        Command::VerifyStrategy { strategy, n, dedup } => commands::verify_strategy(strategy, n, dedup),
        Command::Play { game, human } => play::run(&ctx, &game, human),
        Command::Selftest => commands::selftest(),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
