use std::io::Write;

use incidence_core::formulas::{binary_tree_score, claimed_path, mb_path_score};
use incidence_core::kernel::{fig5_instance, kernelize};
use incidence_core::reductions::{gadget_clauses, Literal};
use incidence_core::{generate, Family, Player, ScorePair, SolveOptions, Solver, VertexId};

use crate::error::CliError;

type Check = (&'static str, fn(&Solver) -> Result<bool, CliError>);

fn path_table(s: &Solver) -> Result<bool, CliError> {
    let ls = [0, 0, 1, 1, 1, 1, 1, 2, 2, 2];
    let rs = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1];
    for n in 1..=10 {
        let got = s.score_pair(&generate(Family::PathL(n))?)?;
        if got != ScorePair::new(ls[n - 1], rs[n - 1]) || mb_path_score(n)? != got {
            return Ok(false);
        }
    }
    Ok(true)
}

fn claimed_path_table(s: &Solver) -> Result<bool, CliError> {
    let ls = [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3];
    let rs = [0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2];
    for n in 1..=11 {
        if s.score_pair(&claimed_path(n)?)? != ScorePair::new(ls[n - 1], rs[n - 1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fig2_moves(s: &Solver) -> Result<bool, CliError> {
    let p = generate(Family::Fig2)?;
    let left = s.solve(&p, Player::Left)?;
    let right = s.solve(&p, Player::Right)?;
    Ok((left.value, left.optimal_moves, right.value, right.optimal_moves) == (4, vec![VertexId(0)], 2, vec![VertexId(8)]))
}

fn path_equivalences(s: &Solver) -> Result<bool, CliError> {
    for n in 1..=4 {
        let sum = generate(Family::PathL(n + 5))?.disjoint_sum(&generate(Family::PathR(n))?);
        if s.score_pair(&sum)? != ScorePair::new(1, 1) {
            return Ok(false);
        }
    }
    Ok(s.milnor_equivalent(&generate(Family::PathL(4))?, &generate(Family::PathL(3))?)?)
}

fn binary_trees(_: &Solver) -> Result<bool, CliError> {
    let s = Solver::new(SolveOptions::default().with_twins());
    for k in 1..=3u32 {
        let want = ScorePair::new(1 << (k - 1), (1 << (k - 1)) - 1);
        if s.score_pair(&generate(Family::BinaryTree(k))?)? != want || binary_tree_score(k)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gadget_table(_: &Solver) -> Result<bool, CliError> {
    let clauses = gadget_clauses([Literal::pos(1), Literal::pos(2), Literal::pos(3)], Literal::pos(4));
    let mut table = Vec::new();
    for true_literals in 0..=3u32 {
        for d in [false, true] {
            let holds = |l: &Literal| (if l.var == 4 { d } else { l.var <= true_literals }) == l.positive;
            table.push(clauses.iter().filter(|c| c.iter().any(holds)).count());
        }
    }
    Ok(table == [6, 4, 7, 6, 7, 7, 6, 7])
}

fn fig5_kernel(s: &Solver) -> Result<bool, CliError> {
    let input = fig5_instance();
    let (out, t) = kernelize(&input)?;
    let shape = t.step2_edges_removed == 16 && t.step4_u_size == 7 && out.k == 13;
    Ok(shape && out.decide(s)? == input.decide(s)?)
}

const CHECKS: [Check; 7] = [
    ("path scores", path_table),
    ("claimed path scores", claimed_path_table),
    ("distinct first moves", fig2_moves),
    ("path equivalences", path_equivalences),
    ("binary trees", binary_trees),
    ("gadget clause counts", gadget_table),
    ("kernel of the typed example", fig5_kernel),
];

/// Runs the fast checks; false if any failed.
pub fn run(out: &mut impl Write) -> Result<bool, CliError> {
    let solver = Solver::default();
    let mut ok = true;
    for (name, check) in CHECKS {
        let verdict = match check(&solver) {
            Ok(true) => "PASS".to_string(),
            Ok(false) => "FAIL".to_string(),
            Err(e) => format!("FAIL ({e})"),
        };
        ok &= verdict == "PASS";
        writeln!(out, "{verdict} {name}")?;
    }
    Ok(ok)
}
