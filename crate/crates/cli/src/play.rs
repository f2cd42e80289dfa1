use std::io::{BufRead, Write};

use incidence_core::formulas::{mm_optimal_move, potential, potential_greedy_move};
use incidence_core::{EdgeColor, Player, Position, SolveOptions, Solver, VertexId};

use crate::error::CliError;

pub struct Config {
    pub human: Player,
    pub first: Player,
    pub max_nodes: u64,
}

struct Advice {
    vertex: VertexId,
    value: Option<i64>,
}

impl Advice {
    fn tag(&self) -> String {
        match self.value {
            Some(v) => format!("exact, value {v}"),
            None => "heuristic".into(),
        }
    }
}

fn name(p: Player) -> &'static str {
    match p {
        Player::Left => "Left",
        Player::Right => "Right",
    }
}

/// Exact advice within the node budget, otherwise a greedy move.
fn advise(p: &Position, mover: Player, max_nodes: u64) -> Advice {
    let solver = Solver::new(SolveOptions {
        max_nodes: Some(max_nodes),
        ..SolveOptions::default()
    });
    if let Ok(r) = solver.solve(p, mover) {
        return Advice {
            vertex: r.optimal_moves[0],
            value: Some(r.value),
        };
    }
    let board = p.board();
    let greedy = if board.all_colored(EdgeColor::Blue) {
        potential_greedy_move(p).ok()
    } else if board.is_graph() && board.all_colored(EdgeColor::Green) {
        mm_optimal_move(p).ok()
    } else {
        None
    };
    Advice {
        vertex: greedy.unwrap_or_else(|| p.free_vertices()[0]),
        value: None,
    }
}

fn status(p: &Position, out: &mut impl Write) -> Result<(), CliError> {
    let list = |who| p.claimed_by(who).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    write!(out, "Left: [{}]  Right: [{}]  score {}", list(Player::Left), list(Player::Right), p.secured_score()?)?;
    if p.board().all_colored(EdgeColor::Blue) {
        if let Ok(phi) = potential(p) {
            write!(out, "  potential {phi}")?;
        }
    }
    writeln!(out)?;
    Ok(())
}

const HELP: &str = "commands: <vertex> to claim it, `undo`, `hint`, `quit`";

pub fn run(start: Position, config: &Config, input: impl BufRead, out: &mut impl Write) -> Result<(), CliError> {
    let mut pos = start;
    let mut history: Vec<(Player, VertexId)> = Vec::new();
    let mut to_move = config.first;
    let mut lines = input.lines();
    writeln!(out, "you are {}; {HELP}", name(config.human))?;
    status(&pos, out)?;
    loop {
        if pos.is_terminal() {
            writeln!(out, "game over, final score {}", pos.terminal_score()?)?;
            return Ok(());
        }
        if to_move != config.human {
            let advice = advise(&pos, to_move, config.max_nodes);
            writeln!(out, "{} plays {} ({})", name(to_move), advice.vertex, advice.tag())?;
            pos = pos.claim(to_move, advice.vertex)?;
            history.push((to_move, advice.vertex));
            to_move = to_move.opponent();
            status(&pos, out)?;
            continue;
        }
        write!(out, "{} to move> ", name(to_move))?;
        out.flush()?;
        let Some(line) = lines.next() else {
            writeln!(out)?;
            return Ok(());
        };
        let line = line?;
        match line.trim() {
            "" => {}
            "quit" | "q" => return Ok(()),
            "help" | "?" => writeln!(out, "{HELP}")?,
            "hint" => {
                let advice = advise(&pos, to_move, config.max_nodes);
                writeln!(out, "hint: {} ({})", advice.vertex, advice.tag())?;
            }
            "undo" => match history.iter().rposition(|&(who, _)| who == config.human) {
                None => writeln!(out, "nothing to undo")?,
                Some(i) => {
                    for (_, v) in history.drain(i..) {
                        pos = pos.unclaim(v);
                    }
                    to_move = config.human;
                    status(&pos, out)?;
                }
            },
            other => {
                let legal = pos.free_vertices();
                match other.parse::<u32>().map(VertexId) {
                    Ok(v) if legal.contains(&v) => {
                        pos = pos.claim(to_move, v)?;
                        history.push((to_move, v));
                        to_move = to_move.opponent();
                        status(&pos, out)?;
                    }
                    _ => {
                        let list: Vec<String> = legal.iter().map(|v| v.to_string()).collect();
                        writeln!(out, "illegal move `{other}`; legal moves: {}", list.join(" "))?;
                    }
                }
            }
        }
    }
}
