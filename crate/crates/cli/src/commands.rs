use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use graphgame::generator::{build_layers_with, write_layer_dump, GenerateOptions};
use graphgame::solver::verify_vc_mirror_with;
use graphgame::strategies::{verify_strategy_with, VerifyOptions};
use graphgame::{
    colex_board, complete_board, naive_minimax, solve_with, Bias, Bob12, Bob13, GameKind, GameSpec, Outcome,
    ResultCache, SolveOptions, StrategyReport, Winner,
};

use crate::args::{parse_range, CliError, CliResult, GameArgs, StrategyName};

/// Roughly the largest layer set that fits in a few gigabytes.
pub const DEFAULT_MAX_STATES: usize = 20_000_000;

pub struct Context {
    pub cache: Option<PathBuf>,
    pub max_states: usize,
}

impl Context {
    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            generate: GenerateOptions { max_entries: self.max_states, ..Default::default() },
            retain_layers: false,
        }
    }

    fn open_cache(&self) -> CliResult<Option<ResultCache>> {
        Ok(match &self.cache {
            Some(p) => Some(ResultCache::open(p)?),
            None => None,
        })
    }
}

/// Solves `spec`, consulting and extending the cache when one is configured.
fn solve_cached(ctx: &Context, cache: &mut Option<ResultCache>, spec: &GameSpec) -> CliResult<(Outcome, Winner)> {
    if let Some(rec) = cache.as_ref().and_then(|c| c.lookup(spec)) {
        return Ok((rec.outcome(), rec.winner));
    }
    let start = Instant::now();
    let r = solve_with(spec, &ctx.solve_options())?;
    if let Some(c) = cache.as_mut() {
        c.append(spec, r.outcome, r.winner, start.elapsed().as_secs_f64())?;
    }
    Ok((r.outcome, r.winner))
}

pub fn solve(ctx: &Context, g: &GameArgs) -> CliResult<()> {
    let spec = g.spec()?;
    let mut cache = ctx.open_cache()?;
    let (o, w) = solve_cached(ctx, &mut cache, &spec)?;
    println!("a={} b={} s={} winner={w}", o.a, o.b, o.score());
    Ok(())
}

pub const TABLE_HEADER: &str = "m,col_a,col_b,delta_a,delta_b,svc,vc_a,vc_b";

pub fn table(ctx: &Context, range: &str, games: &str) -> CliResult<()> {
    let (lo, hi) = parse_range(range)?;
    let mut kinds = [false; 3];
    for g in games.split(',').map(str::trim).filter(|g| !g.is_empty()) {
        match g {
            "col" | "colex" => kinds[0] = true,
            "delta" | "star" => kinds[1] = true,
            "vc" => kinds[2] = true,
            other => return Err(CliError::Usage(format!("unknown game {other:?} in --games"))),
        }
    }
    let mut cache = ctx.open_cache()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{TABLE_HEADER}")?;
    for m in lo..=hi {
        match table_row(ctx, &mut cache, m, kinds) {
            Ok(cells) => writeln!(out, "{m},{cells}")?,
            Err(CliError::Capacity(msg)) => {
                eprintln!("m={m}: {msg}");
                writeln!(out, "{m},skipped")?;
            }
            Err(e) => return Err(e),
        }
        out.flush()?;
    }
    Ok(())
}

fn table_row(ctx: &Context, cache: &mut Option<ResultCache>, m: usize, kinds: [bool; 3]) -> CliResult<String> {
    let base = colex_board(m)?;
    let mut cell = |on: bool, kind: GameKind| -> CliResult<Option<Outcome>> {
        if !on {
            return Ok(None);
        }
        let spec = GameSpec::unbiased(base, kind)?;
        Ok(Some(solve_cached(ctx, cache, &spec)?.0))
    };
    let col = cell(kinds[0], GameKind::Colex)?;
    let delta = cell(kinds[1], GameKind::Star)?;
    let vc = cell(kinds[2], GameKind::Vc)?;
    let pair = |o: Option<Outcome>| o.map_or(",".to_string(), |o| format!("{},{}", o.a, o.b));
    let svc = vc.map_or(String::new(), |o| o.score().to_string());
    Ok(format!("{},{},{svc},{}", pair(col), pair(delta), pair(vc)))
}

pub fn generate(ctx: &Context, g: &GameArgs, dump: Option<&Path>) -> CliResult<()> {
    let spec = g.spec()?;
    let layers = build_layers_with(&spec, &ctx.solve_options().generate)?;
    if let Some(dir) = dump {
        std::fs::create_dir_all(dir)?;
    }
    let mut total = 0;
    for layer in &layers {
        println!("ply {:>2}: {}", layer.ply, layer.len());
        total += layer.len();
        if let Some(dir) = dump {
            let mut w = BufWriter::new(File::create(dir.join(format!("layer_{:02}.bin", layer.ply)))?);
            write_layer_dump(layer, &mut w)?;
            w.flush()?;
        }
    }
    println!("total: {total}");
    Ok(())
}

fn report_line(label: &str, r: &StrategyReport) -> CliResult<()> {
    match &r.counterexample {
        None => {
            println!("{label}: VERIFIED ({} lines)", r.lines_checked);
            Ok(())
        }
        Some(c) => {
            println!("{label}: FAILED after {} lines", r.lines_checked);
            println!("counterexample {c}");
            Err(CliError::Failed(format!("{label} failed")))
        }
    }
}

pub fn verify_strategy(name: StrategyName, n: usize, dedup: bool) -> CliResult<()> {
    let opts = VerifyOptions { dedup, ..Default::default() };
    let biased = |kind, q| -> CliResult<GameSpec> { Ok(GameSpec::new(complete_board(n)?, vec![], kind, Bias::new(1, q)?)?) };
    match name {
        StrategyName::Bob13 => {
            let r = verify_strategy_with(&Bob13::new(n)?, &biased(GameKind::Clique, 3)?, |o| o.b > o.a, &opts)?;
            report_line(&format!("bob13 clique n={n}"), &r)
        }
        StrategyName::Bob12 => {
            let mut ok = Ok(());
            for kind in [GameKind::Star, GameKind::Vc] {
                let r = verify_strategy_with(&Bob12, &biased(kind, 2)?, |o| o.b > o.a, &opts)?;
                let line = report_line(&format!("bob12 {kind} n={n}"), &r);
                if ok.is_ok() {
                    ok = line;
                }
            }
            ok
        }
        StrategyName::VcMirror => {
            if verify_vc_mirror_with(n, &SolveOptions::default(), 200_000_000)? {
                println!("vc-mirror n={n}: VERIFIED");
                Ok(())
            } else {
                println!("vc-mirror n={n}: FAILED");
                Err(CliError::Failed("vc-mirror failed".into()))
            }
        }
    }
}

/// Every game kind on `C(m)`, `m <= 9`, against plain minimax.
pub fn selftest() -> CliResult<()> {
    let mut failures = 0;
    let mut checked = 0;
    for m in 1..=9 {
        for kind in GameKind::ALL {
            let spec = GameSpec::unbiased(colex_board(m)?, kind)?;
            let fast = solve_with(&spec, &SolveOptions::default())?.outcome;
            let slow = naive_minimax(&spec)?;
            checked += 1;
            if fast != slow {
                failures += 1;
                println!("MISMATCH {kind} on C({m}): solver {fast}, minimax {slow}");
            }
        }
    }
    if failures == 0 {
        println!("PASS ({checked} games)");
        Ok(())
    } else {
        println!("FAIL ({failures} of {checked} games)");
        Err(CliError::Failed(format!("{failures} oracle mismatches")))
    }
}
