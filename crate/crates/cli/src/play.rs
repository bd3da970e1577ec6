use std::io::{self, BufRead, Write};

use graphgame::scoring::score;
use graphgame::{best_move, colex_index, solve_with, ColoredBoard, EdgeState, Player, SolveOptions};

use crate::args::{CliError, CliResult, GameArgs, Human};
use crate::commands::Context;

pub fn run(ctx: &Context, g: &GameArgs, human: Human) -> CliResult<()> {
    let spec = g.spec()?;
    let opts = SolveOptions { retain_layers: true, ..ctx.solve_options() };
    let solved = solve_with(&spec, &opts)?;
    let human = match human {
        Human::Alice => Player::P1,
        Human::Bob => Player::P2,
    };
    println!("solved value {} ({} wins with best play)", solved.outcome, solved.winner);
    println!("you are {human} ({}); enter moves as `u v`", human.colour().letter());

    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    let mut b = spec.initial_board();
    for t in 0..spec.plies() {
        let mover = spec.mover_at(t);
        let e = if mover == human {
            loop {
                print!("{} > ", show(&b));
                io::stdout().flush()?;
                let line = lines.next().ok_or_else(|| CliError::Other("input ended before the game did".into()))??;
                match parse_move(&b, &line) {
                    Ok(e) => break e,
                    Err(msg) => println!("{msg}; try again"),
                }
            }
        } else {
            let e = best_move(&b, t, &spec, &solved)?;
            println!("engine ({mover}) colours {e}");
            e
        };
        b = b.apply_move(e, mover.colour())?;
    }
    let o = score(spec.kind, &b);
    println!("{}", show(&b));
    println!("final a={} b={} s={} winner={}", o.a, o.b, o.score(), graphgame::winner(o, &spec));
    Ok(())
}

fn parse_move(b: &ColoredBoard, line: &str) -> Result<graphgame::EdgeId, String> {
    let nums: Vec<usize> = line
        .split(|c: char| c.is_whitespace() || c == '-' || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("{s:?} is not a vertex")))
        .collect::<Result<_, _>>()?;
    let [u, v] = nums[..] else {
        return Err("expected two vertices".into());
    };
    if u >= b.order() || v >= b.order() || u == v {
        return Err(format!("no edge {u}-{v}"));
    }
    let e = colex_index(u.max(v), u.min(v)).map_err(|e| e.to_string())?;
    match b.state(e) {
        EdgeState::Uncolored => Ok(e),
        EdgeState::Absent => Err(format!("edge {e} is not in the graph")),
        _ => Err(format!("edge {e} is already coloured")),
    }
}

fn show(b: &ColoredBoard) -> String {
    let list = |s: EdgeState| b.edges_in_state(s).map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
    format!("R[{}] B[{}]", list(EdgeState::Red), list(EdgeState::Blue))
}
