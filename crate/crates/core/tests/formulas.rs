mod common;

use incidence_core::formulas::{
    binary_tree_score, claimed_path, es_bounds, mb_claimed_path_score, mb_path_score, mb_union_paths_score,
    mm_score, path_residual, potential_greedy_move, FormulaError,
};
use incidence_core::{generate, Dyadic, EdgeColor, Family, Hypergraph, Player, Position, ScorePair, SolveOptions, Solver};

#[test]
fn long_paths_follow_the_period() {
    assert_eq!(mb_path_score(100).unwrap(), ScorePair::new(20, 19));
    assert_eq!(mb_path_score(13).unwrap(), ScorePair::new(3, 2));
    assert_eq!(mb_claimed_path_score(16).unwrap(), ScorePair::new(4, 3));
    let solver = Solver::default();
    assert_eq!(solver.score_pair(&claimed_path(16).unwrap()).unwrap(), ScorePair::new(4, 3));
    for n in [18, 20, 22] {
        let p = generate(Family::PathL(n)).unwrap();
        assert_eq!(solver.score_pair(&p).unwrap(), mb_path_score(n).unwrap(), "P^L_{n}");
    }
    assert!(matches!(mb_path_score(0), Err(FormulaError::TooShort { .. })));
}

#[test]
fn union_offsets() {
    let r = path_residual(&[3, 3]).unwrap();
    assert_eq!((r.offset, r.p3_count, r.p5_count), (1, 0, 0));
    let r = path_residual(&[5, 5, 5, 5]).unwrap();
    assert_eq!((r.offset, r.p3_count, r.p5_count), (3, 0, 0));
    assert_eq!(mb_union_paths_score(&[]).unwrap(), ScorePair::new(0, 0));
    let solver = Solver::default();
    let p = generate(Family::UnionPaths(vec![8, 3])).unwrap();
    assert_eq!(mb_union_paths_score(&[8, 3]).unwrap(), solver.score_pair(&p).unwrap());
}

#[test]
fn deeper_binary_tree() {
    let solver = Solver::new(SolveOptions::default().with_twins());
    let t = generate(Family::BinaryTree(4)).unwrap();
    assert_eq!(solver.score_pair(&t).unwrap(), binary_tree_score(4).unwrap());
    assert_eq!(binary_tree_score(0).unwrap(), ScorePair::new(0, 0));
}

#[test]
fn es_bounds_on_hypergraphs() {
    let solver = Solver::default();
    let mut rng = common::rng(6);
    for _ in 0..300 {
        let h = common::random_hypergraph(&mut rng, 7).recolored(EdgeColor::Blue);
        let (lower, upper) = es_bounds(&h).unwrap();
        let s = solver.score_pair(&Position::new(h)).unwrap();
        assert!(lower <= Dyadic::from_int(s.ls) && Dyadic::from_int(s.rs) <= upper);
    }
    let edgeless = Hypergraph::graph(4, &[], EdgeColor::Blue).unwrap();
    assert_eq!(es_bounds(&edgeless).unwrap(), (Dyadic::new(-1, 1).unwrap(), Dyadic::ZERO));
}

#[test]
fn greedy_move_is_a_free_vertex() {
    let mut p = generate(Family::Fig2).unwrap();
    let mut who = Player::Left;
    while !p.is_terminal() {
        let v = potential_greedy_move(&p).unwrap();
        assert!(p.is_free(v));
        p = p.claim(who, v).unwrap();
        who = who.opponent();
    }
    assert!(matches!(potential_greedy_move(&p), Err(FormulaError::Terminal)));
}

#[test]
fn mm_score_rejects_other_boards() {
    let g = Hypergraph::graph(2, &[(0, 1)], EdgeColor::Blue).unwrap();
    assert!(matches!(mm_score(&g), Err(FormulaError::NotApplicable(_))));
}
