//! Closed forms, bounds and greedy strategies.

use std::sync::OnceLock;

use thiserror::Error;

use crate::board::{EdgeColor, Family, Hypergraph, Owner, Player, Position, ScorePair, VertexId};
use crate::dyadic::Dyadic;
use crate::solver::{SolveError, Solver};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("formula needs {0}")]
    NotApplicable(&'static str),
    #[error("length must be at least {min}, got {got}")]
    TooShort { min: usize, got: usize },
    #[error("position is terminal")]
    Terminal,
    #[error("arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

fn require(ok: bool, what: &'static str) -> Result<(), FormulaError> {
    if ok {
        Ok(())
    } else {
        Err(FormulaError::NotApplicable(what))
    }
}

fn green_graph(g: &Hypergraph) -> Result<(), FormulaError> {
    require(g.is_graph() && g.all_colored(EdgeColor::Green), "an all-green graph")
}

/// Maker-Maker score of an all-green graph: with degrees sorted decreasingly,
/// half the alternating sum `d_1 - d_2 + d_3 - ...`. Degrees are bucketed
/// rather than sorted.
pub fn mm_score(g: &Hypergraph) -> Result<i64, FormulaError> {
    green_graph(g)?;
    let mut count = vec![0usize; g.max_degree() + 1];
    for v in g.vertices() {
        count[g.degree(v)] += 1;
    }
    let (mut total, mut odd) = (0i64, true);
    for d in (0..count.len()).rev() {
        let c = count[d];
        let odd_slots = if odd { c.div_ceil(2) } else { c / 2 };
        let even_slots = c - odd_slots;
        total += (odd_slots as i64 - even_slots as i64) * d as i64;
        if c % 2 == 1 {
            odd = !odd;
        }
    }
    Ok(total / 2)
}

/// A free vertex of maximum degree, smallest index first.
pub fn mm_optimal_move(p: &Position) -> Result<VertexId, FormulaError> {
    green_graph(p.board())?;
    p.free_vertices()
        .into_iter()
        .max_by_key(|&v| (p.board().degree(v), std::cmp::Reverse(v)))
        .ok_or(FormulaError::Terminal)
}

/// Window `(0, Δ)` for the Maker-Maker Left score, `(0, ⌊Δ/2⌋)` on graphs.
pub fn mm_delta_bounds(h: &Hypergraph) -> Result<(i64, i64), FormulaError> {
    require(h.all_colored(EdgeColor::Green), "an all-green board")?;
    let delta = h.max_degree() as i64;
    Ok(if h.is_graph() { (0, delta / 2) } else { (0, delta) })
}

fn blue_board(h: &Hypergraph) -> Result<(), FormulaError> {
    require(h.all_colored(EdgeColor::Blue), "an all-blue board")
}

fn edge_weight(p: &Position, vertices: &[VertexId]) -> Result<Option<Dyadic>, FormulaError> {
    let mut free = 0;
    for &v in vertices {
        match p.owner(v) {
            Owner::Claimed(Player::Right) => return Ok(None),
            Owner::Claimed(Player::Left) => {}
            Owner::Free => free += 1,
        }
    }
    Dyadic::pow2_neg(free).map(Some).ok_or(FormulaError::Overflow)
}

/// `Σ 2^-|e \ V_L|` over the hyperedges Right has not touched.
pub fn potential(p: &Position) -> Result<Dyadic, FormulaError> {
    blue_board(p.board())?;
    let mut total = Dyadic::ZERO;
    for e in p.board().edges() {
        if let Some(w) = edge_weight(p, &e.vertices)? {
            total = total.checked_add(w).ok_or(FormulaError::Overflow)?;
        }
    }
    Ok(total)
}

/// `δ_P(v)`: the potential carried by the live hyperedges through `v`.
pub fn potential_delta(p: &Position, v: VertexId) -> Result<Dyadic, FormulaError> {
    blue_board(p.board())?;
    let mut total = Dyadic::ZERO;
    for &i in p.board().incident(v) {
        if let Some(w) = edge_weight(p, &p.board().edges()[i].vertices)? {
            total = total.checked_add(w).ok_or(FormulaError::Overflow)?;
        }
    }
    Ok(total)
}

/// The free vertex maximizing `δ_P`, smallest index first.
pub fn potential_greedy_move(p: &Position) -> Result<VertexId, FormulaError> {
    blue_board(p.board())?;
    let mut best: Option<(Dyadic, VertexId)> = None;
    for v in p.free_vertices() {
        let d = potential_delta(p, v)?;
        if best.is_none_or(|(b, _)| d > b) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v).ok_or(FormulaError::Terminal)
}

/// Maker-Breaker bounds `(Σ 2^-|e| - nℓ/8, Σ 2^-|e|)` for `(Ls, Rs)`. On
/// graphs, including the edgeless one, `ℓ` is taken as 1, giving
/// `(m/4 - n/8, m/4)`.
pub fn es_bounds(h: &Hypergraph) -> Result<(Dyadic, Dyadic), FormulaError> {
    blue_board(h)?;
    let mut sum = Dyadic::ZERO;
    for e in h.edges() {
        let w = Dyadic::pow2_neg(e.len() as u32).ok_or(FormulaError::Overflow)?;
        sum = sum.checked_add(w).ok_or(FormulaError::Overflow)?;
    }
    let ell = if h.is_graph() { 1 } else { h.pair_multiplicity() as i64 };
    let n = h.vertex_count() as i64;
    let slack = n
        .checked_mul(ell)
        .and_then(|x| Dyadic::new(x as i128, 3))
        .ok_or(FormulaError::Overflow)?;
    Ok((sum.checked_sub(slack).ok_or(FormulaError::Overflow)?, sum))
}

/// Scores of the blue path on `n` vertices: with `n = 5q + r`, `Ls` is `q`
/// for `r <= 2` and `q + 1` otherwise, `Rs` is `q - 1` for `r = 0` and `q`
/// otherwise.
pub fn mb_path_score(n: usize) -> Result<ScorePair, FormulaError> {
    if n == 0 {
        return Err(FormulaError::TooShort { min: 1, got: 0 });
    }
    let (q, r) = ((n / 5) as i64, n % 5);
    let ls = if r <= 2 { q } else { q + 1 };
    let rs = if r == 0 { q - 1 } else { q };
    Ok(ScorePair::new(ls, rs))
}

// blue paths on 2..=6 vertices with one end claimed by Left
const CLAIMED_BASE: [ScorePair; 5] = [
    ScorePair::new(1, 0),
    ScorePair::new(1, 0),
    ScorePair::new(1, 0),
    ScorePair::new(1, 1),
    ScorePair::new(2, 1),
];

/// Scores of the blue path on `n` vertices whose first vertex is already
/// claimed by Left.
pub fn mb_claimed_path_score(n: usize) -> Result<ScorePair, FormulaError> {
    match n {
        0 => Err(FormulaError::TooShort { min: 1, got: 0 }),
        1 => Ok(ScorePair::new(0, 0)),
        _ => {
            let (q, r) = ((n - 2) / 5, (n - 2) % 5);
            Ok(CLAIMED_BASE[r].shifted(q as i64))
        }
    }
}

/// `Σ P_{n_i} ≡ offset + p3·P_3 + p5·P_5`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathResidual {
    pub offset: i64,
    pub p3_count: u8,
    pub p5_count: u8,
}

/// Reduces a union of blue paths, writing `n_i = 5q_i + r_i` with `1 <= r_i <= 5`.
pub fn path_residual(lengths: &[usize]) -> Result<PathResidual, FormulaError> {
    let (mut offset, mut n34, mut n5) = (0i64, 0i64, 0i64);
    for &n in lengths {
        if n == 0 {
            return Err(FormulaError::TooShort { min: 1, got: 0 });
        }
        let q = (n - 1) / 5;
        let r = n - 5 * q;
        offset += q as i64;
        match r {
            3 | 4 => n34 += 1,
            5 => n5 += 1,
            _ => {}
        }
    }
    Ok(PathResidual {
        offset: offset + n34 / 2 + 3 * (n5 / 4),
        p3_count: (n34 % 2) as u8,
        p5_count: (n5 % 4) as u8,
    })
}

/// Scores of a disjoint union of blue paths.
pub fn mb_union_paths_score(lengths: &[usize]) -> Result<ScorePair, FormulaError> {
    let res = path_residual(lengths)?;
    Ok(residual_table()[res.p3_count as usize][res.p5_count as usize].shifted(res.offset))
}

/// Scores of `p3·P_3 + p5·P_5` indexed `[p3][p5]`.
pub type ResidualTable = [[ScorePair; 4]; 2];

const RESIDUAL_FILE: &str = include_str!("../data/path_residuals.txt");

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Text form of a residual table: one `p3 p5 ls rs` line per entry and a
/// trailing checksum line.
pub fn format_residual_table(table: &ResidualTable) -> String {
    let mut body = String::new();
    for (p3, row) in table.iter().enumerate() {
        for (p5, s) in row.iter().enumerate() {
            body.push_str(&format!("{p3} {p5} {} {}\n", s.ls, s.rs));
        }
    }
    format!("{body}checksum {:016x}\n", fnv1a(&body))
}

fn parse_residual_table(text: &str) -> Option<ResidualTable> {
    let (body, tail) = text.rsplit_once("checksum ")?;
    if u64::from_str_radix(tail.trim(), 16).ok()? != fnv1a(body) {
        return None;
    }
    let mut table = [[ScorePair::default(); 4]; 2];
    let mut seen = 0;
    for line in body.lines() {
        let f: Vec<i64> = line.split_whitespace().map(str::parse).collect::<Result<_, _>>().ok()?;
        let [p3, p5, ls, rs] = f[..] else { return None };
        *table.get_mut(p3 as usize)?.get_mut(p5 as usize)? = ScorePair::new(ls, rs);
        seen += 1;
    }
    (seen == 8).then_some(table)
}

/// The shipped residual table, checked against its checksum.
pub fn residual_table() -> &'static ResidualTable {
    static TABLE: OnceLock<ResidualTable> = OnceLock::new();
    TABLE.get_or_init(|| parse_residual_table(RESIDUAL_FILE).expect("corrupt path residual table"))
}

/// Solves every `p3·P_3 + p5·P_5`.
pub fn derive_residual_table(solver: &Solver) -> Result<ResidualTable, FormulaError> {
    let mut table = [[ScorePair::default(); 4]; 2];
    for (p3, row) in table.iter_mut().enumerate() {
        for (p5, entry) in row.iter_mut().enumerate() {
            let mut lengths = vec![3; p3];
            lengths.extend(std::iter::repeat_n(5, p5));
            let board = Family::UnionPaths(lengths).build().map_err(SolveError::from)?;
            *entry = solver.score_pair(&Position::new(board))?;
        }
    }
    Ok(table)
}

/// Blue path on `n` vertices with vertex 0 claimed by Left.
pub fn claimed_path(n: usize) -> Result<Position, FormulaError> {
    if n == 0 {
        return Err(FormulaError::TooShort { min: 1, got: 0 });
    }
    let board = Family::PathL(n).build().map_err(SolveError::from)?;
    Ok(Position::with_claims(board, [0], []).map_err(SolveError::from)?)
}

/// Claimed path reduced modulo `CP_{n+5} ≡ CP_n + 1`: representative length
/// (at most 6) and the shift.
fn reduce_claimed(n: usize) -> (usize, i64) {
    if n < 2 {
        return (n, 0);
    }
    let q = (n - 2) / 5;
    (n - 5 * q, q as i64)
}

/// Scores of the blue cycle on `n` vertices. `Rs` equals `Ls` of the path on
/// `n - 1` vertices; for `Ls`, Left's first vertex and Right's answer leave
/// two claimed paths of total length `n`, each reduced before solving.
pub fn mb_cycle_score(n: usize, solver: &Solver) -> Result<ScorePair, FormulaError> {
    if n < 3 {
        return Err(FormulaError::TooShort { min: 3, got: n });
    }
    let rs = mb_path_score(n - 1)?.ls;
    let mut ls = i64::MAX;
    for k in 1..n {
        let (a, qa) = reduce_claimed(k);
        let (b, qb) = reduce_claimed(n - k);
        let sum = claimed_path(a)?.disjoint_sum(&claimed_path(b)?);
        ls = ls.min(qa + qb + solver.value(&sum, Player::Left)?);
    }
    Ok(ScorePair::new(ls, rs))
}

/// Scores of the complete binary tree of depth `k`: `(2^(k-1), 2^(k-1) - 1)`,
/// and `(0, 0)` for the single vertex.
pub fn binary_tree_score(k: u32) -> Result<ScorePair, FormulaError> {
    if k == 0 {
        return Ok(ScorePair::new(0, 0));
    }
    let half = 1i64.checked_shl(k - 1).filter(|_| k < 63).ok_or(FormulaError::Overflow)?;
    Ok(ScorePair::new(half, half - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{fig1_endgame, generate};

    #[test]
    fn degree_formula() {
        // a single vertex has no edge to score
        for n in 2..8 {
            let g = Family::PathL(n).build().unwrap().recolored(EdgeColor::Green);
            assert_eq!(mm_score(&g).unwrap(), (n % 2) as i64);
        }
        let fig1 = fig1_endgame(EdgeColor::Green);
        assert_eq!(mm_score(fig1.board()).unwrap(), 2);
        assert_eq!(mm_score(&Hypergraph::empty()).unwrap(), 0);
        assert!(mm_score(&Family::PathL(3).build().unwrap()).is_err());
    }

    #[test]
    fn greedy_degree_move() {
        let star = Position::new(Family::Star(3).build().unwrap().recolored(EdgeColor::Green));
        assert_eq!(mm_optimal_move(&star).unwrap(), VertexId(0));
        let p4 = Position::new(Family::PathL(4).build().unwrap().recolored(EdgeColor::Green));
        assert_eq!(mm_optimal_move(&p4).unwrap(), VertexId(1));
    }

    #[test]
    fn delta_window() {
        let fig3 = generate(Family::Fig3Star(5)).unwrap();
        assert_eq!(mm_delta_bounds(fig3.board()).unwrap(), (0, 5));
        assert_eq!(mm_delta_bounds(&Hypergraph::empty()).unwrap(), (0, 0));
        let star = Family::Star(3).build().unwrap().recolored(EdgeColor::Green);
        assert_eq!(mm_delta_bounds(&star).unwrap(), (0, 1));
    }

    #[test]
    fn potential_values() {
        let p3 = generate(Family::PathL(3)).unwrap();
        assert_eq!(potential(&p3).unwrap(), Dyadic::new(1, 1).unwrap());
        assert_eq!(potential_greedy_move(&p3).unwrap(), VertexId(1));
        let done = Position::with_claims(Family::PathL(3).build().unwrap(), [0, 1], [2]).unwrap();
        assert_eq!(potential(&done).unwrap(), Dyadic::from_int(1));
    }

    #[test]
    fn es_examples() {
        let k8 = Family::Complete(8).build().unwrap();
        assert_eq!(es_bounds(&k8).unwrap().0, Dyadic::from_int(6));
        let two_p3 = Family::UnionPaths(vec![3, 3]).build().unwrap();
        assert_eq!(es_bounds(&two_p3).unwrap().1, Dyadic::from_int(1));
        let empty = Hypergraph::new(4, Vec::<(Vec<usize>, EdgeColor)>::new()).unwrap();
        assert_eq!(es_bounds(&empty).unwrap(), (Dyadic::new(-1, 1).unwrap(), Dyadic::ZERO));
    }

    #[test]
    fn path_tables() {
        let ls: Vec<i64> = (1..=10).map(|n| mb_path_score(n).unwrap().ls).collect();
        assert_eq!(ls, [0, 0, 1, 1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(mb_path_score(100).unwrap(), ScorePair::new(20, 19));
        let cls: Vec<i64> = (1..=11).map(|n| mb_claimed_path_score(n).unwrap().ls).collect();
        let crs: Vec<i64> = (1..=11).map(|n| mb_claimed_path_score(n).unwrap().rs).collect();
        assert_eq!(cls, [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3]);
        assert_eq!(crs, [0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2]);
        assert_eq!(mb_claimed_path_score(16).unwrap(), ScorePair::new(4, 3));
    }

    #[test]
    fn unions() {
        assert_eq!(mb_union_paths_score(&[3, 3]).unwrap(), ScorePair::new(1, 1));
        assert_eq!(mb_union_paths_score(&[5, 5, 5, 5]).unwrap(), ScorePair::new(3, 3));
        assert_eq!(mb_union_paths_score(&[5, 5, 3]).unwrap(), ScorePair::new(2, 2));
        assert_eq!(mb_union_paths_score(&[]).unwrap(), ScorePair::new(0, 0));
    }

    #[test]
    fn shipped_table_matches_solver() {
        let derived = derive_residual_table(&Solver::default()).unwrap();
        assert_eq!(&derived, residual_table());
        assert_eq!(format_residual_table(&derived), RESIDUAL_FILE);
    }

    #[test]
    fn small_cycles() {
        let s = Solver::default();
        assert_eq!(mb_cycle_score(3, &s).unwrap(), ScorePair::new(1, 0));
        assert_eq!(mb_cycle_score(4, &s).unwrap().rs, 1);
    }

    #[test]
    fn trees() {
        assert_eq!(binary_tree_score(1).unwrap(), ScorePair::new(1, 0));
        assert_eq!(binary_tree_score(3).unwrap(), ScorePair::new(4, 3));
        assert_eq!(binary_tree_score(0).unwrap(), ScorePair::new(0, 0));
    }
}
