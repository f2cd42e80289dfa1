use incidence_core::io::{parse_board, serialize_board, to_dot};
use incidence_core::{generate, Family, Player, VertexId};

#[test]
fn examples() {
    let p = parse_board("graph 3 2\n0 1\n1 2").unwrap();
    assert_eq!(p, generate(Family::PathL(3)).unwrap());
    let claimed = p.claim(Player::Left, VertexId(0)).unwrap();
    assert!(serialize_board(&claimed).contains("L: 0"));
    let e = parse_board("hypergraph 2 1\nG 0 1 5").unwrap_err();
    assert_eq!((e.line, e.column), (2, 7));
}

#[test]
fn families_round_trip() {
    for family in [
        Family::PathL(6),
        Family::PathR(4),
        Family::Cycle(5),
        Family::Complete(4),
        Family::Star(3),
        Family::BinaryTree(2),
        Family::Fig2,
        Family::Fig3Star(4),
        Family::UnionPaths(vec![3, 2]),
    ] {
        let p = generate(family.clone()).unwrap();
        let text = serialize_board(&p);
        let back = parse_board(&text).unwrap();
        assert_eq!(back.board(), p.board(), "{family:?}");
        assert_eq!(serialize_board(&back), text);
    }
}

#[test]
fn errors_report_positions() {
    for (text, line) in [
        ("", 1),
        ("graph 2 1\n0 0", 2),
        ("graph 2 2\n0 1", 3),
        ("hypergraph 3 1\nX 0 1", 2),
        ("graph 3 1\n0 1\nL: 0\nR: 0", 4),
        ("graph 3 1\n0 1\nL: 9", 3),
    ] {
        let e = parse_board(text).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
    }
}

#[test]
fn dot_marks_claims() {
    let p = generate(Family::PathL(2)).unwrap().claim(Player::Right, VertexId(1)).unwrap();
    let dot = to_dot(&p);
    assert!(dot.contains("v0 -- v1"));
    assert!(dot.contains("lightpink"));
}
