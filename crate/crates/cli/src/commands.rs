use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use incidence_core::formulas::{
    binary_tree_score, claimed_path, es_bounds, mb_claimed_path_score, mb_cycle_score, mb_path_score,
    mb_union_paths_score, mm_delta_bounds, mm_score, potential, potential_greedy_move,
};
use incidence_core::io::{parse_board, parse_qbf, serialize_board, serialize_qbf, to_dot};
use incidence_core::kernel::{kernelize_with, KernelInstance, KernelOptions, KernelOutcome};
use incidence_core::reductions::{
    max_sat_game_value, mb_to_mm_universal, qbf3_to_qmax2sat, qbf_value, qmax2sat_to_incidence, QBFormula,
};
use incidence_core::{fig1_endgame, generate, EdgeColor, Family, Player, Position, SolveOptions, Solver};
use serde_json::json;

use crate::args::{
    Cli, Command, EquivArgs, FormulaArgs, FormulaKind, GenArgs, GenFamily, KernelizeArgs, PlayArgs, ReduceCommand,
    Side, SolveArgs,
};
use crate::error::CliError;
use crate::record::{ResultRecord, Timing};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(argv: impl IntoIterator<Item = OsString>) -> ExitCode {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<()> {
    match command {
        Command::Solve(a) => solve(a, out),
        Command::Formula(a) => formula(a, out),
        Command::Equiv(a) => equiv(a, out),
        Command::Kernelize(a) => kernelize(a, out),
        Command::Reduce(c) => reduce(c, out),
        Command::Gen(a) => gen(a, out),
        Command::Play(a) => play(a, out),
        Command::Selftest => {
            if crate::selftest::run(out)? {
                Ok(())
            } else {
                Err(CliError::Usage("selftest failed".into()))
            }
        }
    }
}

/// Raw bytes of a file, or of standard input for `-` or no path.
fn read_input(path: Option<&Path>) -> Result<(String, Vec<u8>)> {
    match path {
        Some(p) if p != Path::new("-") => {
            let bytes = fs::read(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), bytes))
        }
        _ => {
            let mut bytes = Vec::new();
            io::stdin().read_to_end(&mut bytes)?;
            Ok(("<stdin>".into(), bytes))
        }
    }
}

fn text(name: &str, bytes: &[u8]) -> Result<String> {
    String::from_utf8(bytes.to_vec()).map_err(|_| CliError::Parse(format!("{name}: not valid UTF-8")))
}

fn read_board(path: Option<&Path>) -> Result<(Position, Vec<u8>)> {
    let (name, bytes) = read_input(path)?;
    let p = parse_board(&text(&name, &bytes)?).map_err(|e| CliError::Parse(format!("{name}: {e}")))?;
    Ok((p, bytes))
}

fn read_formula(path: Option<&Path>) -> Result<QBFormula> {
    let (name, bytes) = read_input(path)?;
    parse_qbf(&text(&name, &bytes)?).map_err(|e| CliError::Parse(format!("{name}: {e}")))
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn solve(a: SolveArgs, out: &mut impl Write) -> Result<()> {
    let (p, bytes) = read_board(a.input.as_deref())?;
    let options = a.engine.options();
    let solver = Solver::new(options.clone());
    let mut record = ResultRecord::new(&bytes, &p, &options, a.moves);
    let mut timing = Timing::default();
    if matches!(a.first, Side::Left | Side::Both) {
        let start = Instant::now();
        record.set_left(&solver.solve(&p, Player::Left)?);
        timing.left_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if matches!(a.first, Side::Right | Side::Both) {
        let start = Instant::now();
        record.set_right(&solver.solve(&p, Player::Right)?);
        timing.right_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if a.timing {
        record.timing = Some(timing);
    }
    if let Some(path) = &a.dot {
        fs::write(path, to_dot(&p))?;
    }
    emit_json(out, &record)
}

fn sizes(params: &[String], want: usize, what: &str) -> Result<Vec<usize>> {
    let values: Vec<usize> = params
        .iter()
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("expected a size, found `{s}`"))))
        .collect::<Result<_>>()?;
    if want > 0 && values.len() != want {
        return Err(CliError::Usage(format!("{what} takes {want} size argument(s)")));
    }
    Ok(values)
}

fn board_param(params: &[String]) -> Result<Position> {
    match params {
        [] => Ok(read_board(None)?.0),
        [path] => Ok(read_board(Some(Path::new(path)))?.0),
        _ => Err(CliError::Usage("expected a single board file".into())),
    }
}

fn formula(a: FormulaArgs, out: &mut impl Write) -> Result<()> {
    let pair = |s: incidence_core::ScorePair| json!({ "ls": s.ls, "rs": s.rs });
    let value = match a.kind {
        FormulaKind::Path => pair(mb_path_score(sizes(&a.params, 1, "path")?[0])?),
        FormulaKind::ClaimedPath => pair(mb_claimed_path_score(sizes(&a.params, 1, "claimed-path")?[0])?),
        FormulaKind::UnionPaths => pair(mb_union_paths_score(&sizes(&a.params, 0, "union-paths")?)?),
        FormulaKind::Cycle => pair(mb_cycle_score(sizes(&a.params, 1, "cycle")?[0], &Solver::default())?),
        FormulaKind::BinaryTree => {
            let k = sizes(&a.params, 1, "binary-tree")?[0];
            let k = u32::try_from(k).map_err(|_| CliError::Usage(format!("depth {k} too large")))?;
            pair(binary_tree_score(k)?)
        }
        FormulaKind::Mm => json!({ "ls": mm_score(board_param(&a.params)?.board())? }),
        FormulaKind::MmDelta => {
            let (lo, hi) = mm_delta_bounds(board_param(&a.params)?.board())?;
            json!({ "ls_lower": lo, "ls_upper": hi })
        }
        FormulaKind::Es => {
            let (lo, hi) = es_bounds(board_param(&a.params)?.board())?;
            json!({ "ls_lower": lo.to_string(), "rs_upper": hi.to_string() })
        }
        FormulaKind::Potential => {
            let p = board_param(&a.params)?;
            let greedy = if p.is_terminal() { None } else { Some(potential_greedy_move(&p)?.0) };
            json!({ "potential": potential(&p)?.to_string(), "greedy_move": greedy })
        }
    };
    emit_json(out, &value)
}

fn equiv(a: EquivArgs, out: &mut impl Write) -> Result<()> {
    let (g, _) = read_board(Some(&a.first))?;
    let (h, _) = read_board(Some(&a.second))?;
    let solver = Solver::new(SolveOptions {
        size_budget: Some(a.budget),
        ..SolveOptions::default()
    });
    let verdict = if solver.milnor_equivalent(&g, &h)? { "equivalent" } else { "not equivalent" };
    writeln!(out, "{verdict}")?;
    Ok(())
}

fn player_name(p: Player) -> &'static str {
    match p {
        Player::Left => "left",
        Player::Right => "right",
    }
}

fn kernelize(a: KernelizeArgs, out: &mut impl Write) -> Result<()> {
    let (p, _) = read_board(a.input.as_deref())?;
    let inst = KernelInstance::new(p, a.k, a.first.into());
    let (kernel, transcript) = kernelize_with(&inst, KernelOptions { literal_share: a.literal_share })?;
    let outcome = match transcript.outcome {
        KernelOutcome::Kernel => "kernel",
        KernelOutcome::TrivialTrue => "trivially true",
        KernelOutcome::TrivialFalse => "trivially false",
    };
    let mut header = format!("# outcome {outcome}\n# k {}\n# first {}\n", kernel.k, player_name(kernel.first));
    match &a.transcript {
        Some(path) => fs::write(path, transcript.to_string())?,
        None => {
            for line in transcript.to_string().lines() {
                writeln!(header, "# {line}").unwrap();
            }
        }
    }
    write!(out, "{header}{}", serialize_board(&kernel.position))?;
    Ok(())
}

fn reduce(c: ReduceCommand, out: &mut impl Write) -> Result<()> {
    match c {
        ReduceCommand::Qbf3 { input } => {
            let f = read_formula(input.as_deref())?;
            let (g, k) = qbf3_to_qmax2sat(&f)?;
            write!(out, "# threshold {k}\n{}", serialize_qbf(&g))?;
        }
        ReduceCommand::Incidence { input, k } => {
            let f = read_formula(input.as_deref())?;
            let (g, cert) = qmax2sat_to_incidence(&f, k)?;
            writeln!(out, "# first right")?;
            writeln!(out, "# k' {}", cert.k_prime)?;
            writeln!(out, "# N' {}", cert.n_prime)?;
            writeln!(out, "# padding levels {}", cert.padding)?;
            for (var, centers) in &cert.vertex_map {
                writeln!(out, "# x{var} centers {} {} {}", centers[0], centers[1], centers[2])?;
            }
            write!(out, "{}", serialize_board(&Position::new(g)))?;
        }
        ReduceCommand::Lift { input } => {
            let (p, _) = read_board(input.as_deref())?;
            if p.free_count() != p.vertex_count() {
                return Err(CliError::Usage("lift takes a board without claimed vertices".into()));
            }
            write!(out, "{}", serialize_board(&Position::new(mb_to_mm_universal(p.board())?)))?;
        }
        ReduceCommand::Eval { input } => {
            let f = read_formula(input.as_deref())?;
            emit_json(
                out,
                &json!({ "true": qbf_value(&f)?, "max_sat_value": max_sat_game_value(&f)?, "clauses": f.clauses.len() }),
            )?;
        }
    }
    Ok(())
}

fn gen(a: GenArgs, out: &mut impl Write) -> Result<()> {
    let one = |name: &str| -> Result<usize> {
        match a.params.as_slice() {
            [x] => Ok(*x),
            _ => Err(CliError::Usage(format!("{name} takes one size argument"))),
        }
    };
    let none = |name: &str| -> Result<()> {
        if a.params.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{name} takes no arguments")))
        }
    };
    let p = match a.family {
        GenFamily::PathL => generate(Family::PathL(one("path-l")?))?,
        GenFamily::PathR => generate(Family::PathR(one("path-r")?))?,
        GenFamily::ClaimedPath => claimed_path(one("claimed-path")?)?,
        GenFamily::Cycle => generate(Family::Cycle(one("cycle")?))?,
        GenFamily::Complete => generate(Family::Complete(one("complete")?))?,
        GenFamily::Star => generate(Family::Star(one("star")?))?,
        GenFamily::BinaryTree => {
            let k = u32::try_from(one("binary-tree")?).map_err(|_| CliError::Usage("depth too large".into()))?;
            generate(Family::BinaryTree(k))?
        }
        GenFamily::UnionPaths => generate(Family::UnionPaths(a.params.clone()))?,
        GenFamily::Fig1 => {
            none("fig1")?;
            fig1_endgame(EdgeColor::Blue)
        }
        GenFamily::Fig2 => {
            none("fig2")?;
            generate(Family::Fig2)?
        }
        GenFamily::Fig3Star => generate(Family::Fig3Star(one("fig3-star")?))?,
    };
    let s = if a.dot { to_dot(&p) } else { serialize_board(&p) };
    write!(out, "{s}")?;
    Ok(())
}

fn play(a: PlayArgs, out: &mut impl Write) -> Result<()> {
    let (p, _) = read_board(Some(&a.input))?;
    let config = crate::play::Config {
        human: a.human.into(),
        first: a.first.into(),
        max_nodes: a.max_nodes,
    };
    crate::play::run(p, &config, io::stdin().lock(), out)
}
