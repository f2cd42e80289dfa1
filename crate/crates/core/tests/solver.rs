mod common;

use common::Oracle;
use incidence_core::enumerate::graphs;
use incidence_core::solver::SolveError;
use incidence_core::{
    generate, twin_reduce, EdgeColor, Family, Hypergraph, Player, Position, SolveOptions, Solver, VertexId,
};
use rand::Rng;

const MOVERS: [Player; 2] = [Player::Left, Player::Right];

fn indices(moves: &[VertexId]) -> Vec<usize> {
    moves.iter().map(|v| v.index()).collect()
}

#[test]
fn matches_oracle_on_small_graphs() {
    let solver = Solver::default();
    for color in [EdgeColor::Blue, EdgeColor::Green, EdgeColor::Red] {
        for n in 0..=6 {
            for edges in graphs(n) {
                let p = Position::new(Hypergraph::graph(n, &edges, color).unwrap());
                let mut oracle = Oracle::new(p.board());
                for mover in MOVERS {
                    let r = solver.solve(&p, mover).unwrap();
                    assert_eq!(r.value, oracle.value(&p, mover), "{color:?} {edges:?} {mover:?}");
                    assert_eq!(indices(&r.optimal_moves), oracle.optimal_moves(&p, mover), "{edges:?}");
                }
            }
        }
    }
}

#[test]
fn matches_oracle_on_random_partisan_positions() {
    let solver = Solver::default();
    let mut rng = common::rng(1);
    for _ in 0..600 {
        let p = common::random_position(&mut rng, 9);
        let mut oracle = Oracle::new(p.board());
        for mover in MOVERS {
            let r = solver.solve(&p, mover).unwrap();
            assert_eq!(r.value, oracle.value(&p, mover), "{p:?}");
            assert_eq!(indices(&r.optimal_moves), oracle.optimal_moves(&p, mover));
            assert_eq!(r.optimal_moves.is_empty(), p.is_terminal());
        }
    }
}

fn variants() -> Vec<SolveOptions> {
    let base = SolveOptions::default();
    vec![
        SolveOptions { symmetry: false, ..base.clone() },
        base.clone().with_twins(),
        SolveOptions { domination: true, ..base.clone() },
        SolveOptions { alpha_beta: true, ..base.clone() },
        SolveOptions { workers: 4, ..base.clone() },
        SolveOptions { table_capacity: 64, ..base.clone() },
        SolveOptions {
            twin_reduction: true,
            domination: true,
            alpha_beta: true,
            workers: 3,
            ..base
        },
    ]
}

#[test]
fn options_agree_on_blue_graphs() {
    let reference = Solver::default();
    let solvers: Vec<Solver> = variants().into_iter().map(Solver::new).collect();
    let mut rng = common::rng(2);
    for n in 0..=7 {
        for edges in graphs(n) {
            let board = Hypergraph::graph(n, &edges, EdgeColor::Blue).unwrap();
            let fresh = Position::new(board.clone());
            let claimed = common::random_claims(&mut rng, board);
            for p in [&fresh, &claimed] {
                for mover in MOVERS {
                    let want = reference.solve(p, mover).unwrap();
                    for s in &solvers {
                        let got = s.solve(p, mover).unwrap();
                        assert_eq!(got.value, want.value, "{:?} {edges:?}", s.options());
                        assert_eq!(got.optimal_moves, want.optimal_moves, "{:?} {edges:?}", s.options());
                    }
                }
            }
        }
    }
}

#[test]
fn options_agree_on_partisan_boards() {
    let reference = Solver::default();
    let solvers: Vec<Solver> = [
        SolveOptions { symmetry: false, ..SolveOptions::default() },
        SolveOptions { alpha_beta: true, ..SolveOptions::default() },
        SolveOptions { workers: 4, ..SolveOptions::default() },
    ]
    .into_iter()
    .map(Solver::new)
    .collect();
    let mut rng = common::rng(3);
    for _ in 0..400 {
        let p = common::random_position(&mut rng, 9);
        for mover in MOVERS {
            let want = reference.solve(&p, mover).unwrap();
            for s in &solvers {
                let got = s.solve(&p, mover).unwrap();
                assert_eq!((got.value, &got.optimal_moves), (want.value, &want.optimal_moves));
            }
        }
    }
}

#[test]
fn twin_reduction_preserves_scores() {
    let solver = Solver::default();
    let mut reduced_boards = 0;
    for n in 0..=8 {
        for edges in graphs(n) {
            let p = Position::new(Hypergraph::graph(n, &edges, EdgeColor::Blue).unwrap());
            let r = twin_reduce(&p).unwrap();
            if r == p {
                continue;
            }
            reduced_boards += 1;
            assert_eq!(r.free_count() % 2, p.free_count() % 2);
            assert_eq!(solver.score_pair(&r).unwrap(), solver.score_pair(&p).unwrap(), "{edges:?}");
        }
    }
    assert!(reduced_boards > 1000);
}

#[test]
fn nonzugzwang_and_nonnegativity_on_blue_boards() {
    let solver = Solver::default();
    for n in 0..=7 {
        for edges in graphs(n) {
            let p = Position::new(Hypergraph::graph(n, &edges, EdgeColor::Blue).unwrap());
            let s = solver.score_pair(&p).unwrap();
            assert!(s.ls >= s.rs && s.rs >= 0, "{edges:?}");
            let neg = solver.score_pair(&p.negate()).unwrap();
            assert_eq!((neg.ls, neg.rs), (-s.rs, -s.ls));
        }
    }
}

#[test]
fn sandwich_on_pairs_of_small_boards() {
    let solver = Solver::default();
    let mut boards = Vec::new();
    for n in 0..=4 {
        for edges in graphs(n) {
            for color in [EdgeColor::Blue, EdgeColor::Red, EdgeColor::Green] {
                boards.push(Position::new(Hypergraph::graph(n, &edges, color).unwrap()));
            }
        }
    }
    let pairs: Vec<_> = boards.iter().map(|b| solver.score_pair(b).unwrap()).collect();
    for (g, sg) in boards.iter().zip(&pairs) {
        for (h, sh) in boards.iter().zip(&pairs) {
            let sum = solver.score_pair(&g.disjoint_sum(h)).unwrap();
            assert!(sg.rs + sh.rs <= sum.rs);
            assert!(sum.rs <= sg.ls + sh.rs);
            assert!(sg.ls + sh.rs <= sum.ls);
            assert!(sum.ls <= sg.ls + sh.ls);
        }
    }
}

#[test]
fn deterministic_results() {
    let p = generate(Family::Fig2).unwrap();
    for options in variants() {
        let a = Solver::new(options.clone()).solve(&p, Player::Left).unwrap();
        let b = Solver::new(options.clone()).solve(&p, Player::Left).unwrap();
        assert_eq!((a.value, &a.optimal_moves), (b.value, &b.optimal_moves));
        if options.workers == 1 {
            assert_eq!(a.nodes_expanded, b.nodes_expanded);
        }
    }
}

#[test]
fn budgets_are_resource_errors() {
    let p = generate(Family::Complete(9)).unwrap();
    let tight = Solver::new(SolveOptions { max_nodes: Some(5), ..SolveOptions::default() });
    let err = tight.solve(&p, Player::Left).unwrap_err();
    assert!(matches!(err, SolveError::NodeBudget { limit: 5 }) && err.is_resource());

    let small = Solver::new(SolveOptions { size_budget: Some(4), ..SolveOptions::default() });
    let path = generate(Family::PathL(3)).unwrap();
    assert!(small.milnor_equivalent(&path, &path).unwrap_err().is_resource());

    let big = generate(Family::PathL(200)).unwrap();
    assert!(Solver::default().solve(&big, Player::Left).unwrap_err().is_resource());
}

#[test]
fn random_claimed_paths_and_cycles_match_oracle() {
    let solver = Solver::new(SolveOptions::default().with_twins());
    let mut rng = common::rng(4);
    for _ in 0..200 {
        let n = rng.random_range(3..=12);
        let family = if rng.random_bool(0.5) { Family::PathL(n) } else { Family::Cycle(n) };
        let p = common::random_claims(&mut rng, family.build().unwrap());
        let mut oracle = Oracle::new(p.board());
        for mover in MOVERS {
            assert_eq!(solver.value(&p, mover).unwrap(), oracle.value(&p, mover), "{family:?} {p:?}");
        }
    }
}
