//! Quantified formulas, their brute-force evaluators, and the constructions
//! 3-QBF → Q-Max-2-SAT → Maker-Breaker Incidence, plus the universal-vertex
//! lift from Maker-Breaker to Maker-Maker.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::board::{BoardError, EdgeColor, Hypergraph, VertexId};

/// Largest prefix the brute-force evaluators accept.
pub const MAX_ORACLE_VARS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("variable {0} is quantified more than once")]
    DuplicateVariable(u32),
    #[error("variable {0} does not appear in the prefix")]
    UnboundVariable(u32),
    #[error("variable 0 is not allowed")]
    ZeroVariable,
    #[error("clause {index} has width {width}, expected {expected}")]
    Width { index: usize, width: usize, expected: &'static str },
    #[error("clause {0} repeats the same literal")]
    RepeatedLiteral(usize),
    #[error("{vars} variables exceed the evaluator limit of {limit}")]
    TooManyVariables { vars: usize, limit: usize },
    #[error("the lift needs an all-blue board")]
    NotMakerBreaker,
    #[error("construction too large")]
    Overflow,
    #[error(transparent)]
    Board(#[from] BoardError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Signed-integer form: `-3` is the negation of variable 3.
    pub fn from_signed(x: i64) -> Option<Self> {
        let var = u32::try_from(x.unsigned_abs()).ok().filter(|&v| v > 0)?;
        Some(Literal { var, positive: x > 0 })
    }

    pub fn to_signed(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// A prenex formula in conjunctive normal form; the prefix is listed
/// outermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBFormula {
    pub prefix: Vec<(u32, Quantifier)>,
    pub clauses: Vec<Vec<Literal>>,
}

impl QBFormula {
    pub fn new(prefix: Vec<(u32, Quantifier)>, clauses: Vec<Vec<Literal>>) -> Result<Self, ReductionError> {
        let f = QBFormula { prefix, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        let mut seen = HashSet::new();
        for &(v, _) in &self.prefix {
            if v == 0 {
                return Err(ReductionError::ZeroVariable);
            }
            if !seen.insert(v) {
                return Err(ReductionError::DuplicateVariable(v));
            }
        }
        for clause in &self.clauses {
            for l in clause {
                if !seen.contains(&l.var) {
                    return Err(ReductionError::UnboundVariable(l.var));
                }
            }
        }
        Ok(())
    }

    pub fn max_var(&self) -> u32 {
        self.prefix.iter().map(|&(v, _)| v).max().unwrap_or(0)
    }

    fn check_width(&self, ok: impl Fn(usize) -> bool, expected: &'static str) -> Result<(), ReductionError> {
        for (index, c) in self.clauses.iter().enumerate() {
            if !ok(c.len()) {
                return Err(ReductionError::Width {
                    index,
                    width: c.len(),
                    expected,
                });
            }
        }
        Ok(())
    }
}

/// Minimax over the prefix: existential variables maximize `leaf`,
/// universal ones minimize it.
fn game_value(f: &QBFormula, leaf: &dyn Fn(&[bool]) -> i64) -> Result<i64, ReductionError> {
    f.validate()?;
    if f.prefix.len() > MAX_ORACLE_VARS {
        return Err(ReductionError::TooManyVariables {
            vars: f.prefix.len(),
            limit: MAX_ORACLE_VARS,
        });
    }
    let mut value = vec![false; f.max_var() as usize + 1];
    fn go(f: &QBFormula, depth: usize, value: &mut [bool], leaf: &dyn Fn(&[bool]) -> i64) -> i64 {
        let Some(&(var, q)) = f.prefix.get(depth) else {
            return leaf(value);
        };
        let mut results = [0; 2];
        for (slot, b) in [false, true].into_iter().enumerate() {
            value[var as usize] = b;
            results[slot] = go(f, depth + 1, value, leaf);
        }
        match q {
            Quantifier::Exists => results[0].max(results[1]),
            Quantifier::Forall => results[0].min(results[1]),
        }
    }
    Ok(go(f, 0, &mut value, leaf))
}

fn satisfied(clause: &[Literal], value: &[bool]) -> bool {
    clause.iter().any(|l| value[l.var as usize] == l.positive)
}

/// Truth value of a quantified CNF formula.
pub fn qbf_value(f: &QBFormula) -> Result<bool, ReductionError> {
    let v = game_value(f, &|value| f.clauses.iter().all(|c| satisfied(c, value)) as i64)?;
    Ok(v == 1)
}

/// Number of clauses satisfied under optimal play, for clauses of any width.
pub fn max_sat_game_value(f: &QBFormula) -> Result<i64, ReductionError> {
    game_value(f, &|value| f.clauses.iter().filter(|c| satisfied(c, value)).count() as i64)
}

/// Number of satisfied clauses of a quantified 2-CNF formula under optimal play.
pub fn qmax2sat_value(f: &QBFormula) -> Result<i64, ReductionError> {
    f.check_width(|w| (1..=2).contains(&w), "1 or 2")?;
    max_sat_game_value(f)
}

/// The ten clauses attached to `l1 ∨ l2 ∨ l3`, units still unpadded.
pub fn gadget_clauses(l: [Literal; 3], d: Literal) -> Vec<Vec<Literal>> {
    vec![
        vec![l[0]],
        vec![l[1]],
        vec![l[2]],
        vec![d],
        vec![l[0].negated(), l[1].negated()],
        vec![l[0].negated(), l[2].negated()],
        vec![l[1].negated(), l[2].negated()],
        vec![d.negated(), l[0]],
        vec![d.negated(), l[1]],
        vec![d.negated(), l[2]],
    ]
}

/// 3-QBF to Q-Max-2-SAT. Clause `i` gets a fresh existential `d_i`
/// (quantified after the original prefix); unit clauses are widened with a
/// single fresh universal variable quantified last. Returns the formula and
/// the threshold `7m`.
pub fn qbf3_to_qmax2sat(f: &QBFormula) -> Result<(QBFormula, i64), ReductionError> {
    f.validate()?;
    f.check_width(|w| w == 3, "3")?;
    let m = f.clauses.len();
    let base = f.max_var();
    let mut prefix = f.prefix.clone();
    let mut clauses = Vec::with_capacity(10 * m);
    let pad = base + m as u32 + 1;
    for (i, c) in f.clauses.iter().enumerate() {
        let d = base + i as u32 + 1;
        prefix.push((d, Quantifier::Exists));
        for mut g in gadget_clauses([c[0], c[1], c[2]], Literal::pos(d)) {
            if g.len() == 1 {
                g.push(Literal::pos(pad));
            }
            clauses.push(g);
        }
    }
    if m > 0 {
        prefix.push((pad, Quantifier::Forall));
    }
    Ok((QBFormula { prefix, clauses }, 7 * m as i64))
}

/// Vertex bookkeeping of the star construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    /// Centers `(v_i, v̄_i, ṽ_i)` of every original variable.
    pub vertex_map: Vec<(u32, [VertexId; 3])>,
    /// Level `i` (1-based, innermost is 1) of every original variable.
    pub levels: Vec<(u32, usize)>,
    /// Number of clause-free padding levels inserted.
    pub padding: usize,
    /// Half the number of levels.
    pub n: usize,
    pub m: usize,
    pub n_prime: i64,
    pub k_prime: i64,
    /// Number of leaves, `6mn(2n+1)`.
    pub leaves: usize,
}

impl ReductionCertificate {
    pub fn center(&self, lit: Literal) -> Option<VertexId> {
        let (_, c) = self.vertex_map.iter().find(|(v, _)| *v == lit.var)?;
        Some(if lit.positive { c[0] } else { c[1] })
    }
}

/// Q-Max-2-SAT (with threshold `k`) to Maker-Breaker Incidence. The prefix
/// is padded with clause-free variables to read `∃x_2n ∀x_2n-1 ... ∀x_1`;
/// level `i` gets three stars with `2mi` leaves each, and each clause
/// becomes an edge between the centers of its literals. Right's score is at
/// least `k'` iff Falsifier keeps the number of satisfied clauses below `k`.
///
/// Centers of level `i` are `3(i-1) + {0, 1, 2}`; leaves follow all centers,
/// level by level, star by star.
pub fn qmax2sat_to_incidence(f: &QBFormula, k: i64) -> Result<(Hypergraph, ReductionCertificate), ReductionError> {
    f.validate()?;
    f.check_width(|w| w == 2, "2")?;
    for (i, c) in f.clauses.iter().enumerate() {
        if c[0] == c[1] {
            return Err(ReductionError::RepeatedLiteral(i));
        }
    }
    // alternation, outermost first; None marks padding
    let mut slots: Vec<Option<u32>> = Vec::new();
    for &(var, q) in &f.prefix {
        let expected = if slots.len().is_multiple_of(2) { Quantifier::Exists } else { Quantifier::Forall };
        if q != expected {
            slots.push(None);
        }
        slots.push(Some(var));
    }
    if slots.len() % 2 == 1 {
        slots.push(None);
    }
    let levels = slots.len();
    let n = levels / 2;
    let m = f.clauses.len();
    let level_of: HashMap<u32, usize> = slots
        .iter()
        .enumerate()
        .filter_map(|(p, v)| v.map(|v| (v, levels - p)))
        .collect();

    let leaves = 6usize
        .checked_mul(m)
        .and_then(|x| x.checked_mul(n))
        .and_then(|x| x.checked_mul(2 * n + 1))
        .ok_or(ReductionError::Overflow)?;
    let centers = 3 * levels;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(leaves + m);
    let mut next = centers;
    for i in 1..=levels {
        for c in 0..3 {
            let center = 3 * (i - 1) + c;
            for _ in 0..2 * m * i {
                edges.push((center, next));
                next += 1;
            }
        }
    }
    debug_assert_eq!(next, centers + leaves);
    let vertex_of = |l: Literal| 3 * (level_of[&l.var] - 1) + usize::from(!l.positive);
    for c in &f.clauses {
        edges.push((vertex_of(c[0]), vertex_of(c[1])));
    }
    let board = Hypergraph::with_multi_edges(next, edges.iter().map(|&(a, b)| ([a, b], EdgeColor::Blue)))?;

    let (mi, ni) = (m as i64, n as i64);
    let n_prime = 3 * mi * ni * (ni + 1) - 2 * mi * ni;
    let mut vertex_map: Vec<(u32, [VertexId; 3])> = f
        .prefix
        .iter()
        .map(|&(v, _)| {
            let base = 3 * (level_of[&v] - 1);
            (v, [base, base + 1, base + 2].map(VertexId::from))
        })
        .collect();
    vertex_map.sort_by_key(|&(v, _)| v);
    let mut level_list: Vec<(u32, usize)> = level_of.into_iter().collect();
    level_list.sort_unstable();
    Ok((
        board,
        ReductionCertificate {
            vertex_map,
            levels: level_list,
            padding: slots.iter().filter(|s| s.is_none()).count(),
            n,
            m,
            n_prime,
            k_prime: n_prime + mi - k + 1,
            leaves,
        },
    ))
}

/// Adds a vertex `n` to every hyperedge and recolors green: the Maker-Maker
/// Left score of the result equals the Maker-Breaker Right score of `g`.
pub fn mb_to_mm_universal(g: &Hypergraph) -> Result<Hypergraph, ReductionError> {
    if !g.all_colored(EdgeColor::Blue) {
        return Err(ReductionError::NotMakerBreaker);
    }
    let n = g.vertex_count();
    let edges = g.edges().iter().map(|e| {
        let members: Vec<usize> = e.vertices.iter().map(|v| v.index()).chain([n]).collect();
        (members, EdgeColor::Green)
    });
    Ok(if g.allows_multi_edges() {
        Hypergraph::with_multi_edges(n + 1, edges)?
    } else {
        Hypergraph::new(n + 1, edges)?
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(x: i64) -> Literal {
        Literal::from_signed(x).unwrap()
    }

    fn formula(prefix: &[(u32, Quantifier)], clauses: &[&[i64]]) -> QBFormula {
        QBFormula::new(prefix.to_vec(), clauses.iter().map(|c| c.iter().map(|&x| lit(x)).collect()).collect()).unwrap()
    }

    use Quantifier::{Exists as E, Forall as A};

    #[test]
    fn evaluators() {
        assert_eq!(qmax2sat_value(&formula(&[(1, A)], &[&[1, 1]])).unwrap(), 0);
        assert_eq!(qmax2sat_value(&formula(&[(1, E)], &[&[1, 1]])).unwrap(), 1);
        assert_eq!(qmax2sat_value(&formula(&[(2, E), (1, A)], &[&[1, 2]])).unwrap(), 1);
        assert!(qbf_value(&formula(&[(1, A), (2, E)], &[&[1, 2, 2], &[-1, -2, -2]])).unwrap());
        assert!(!qbf_value(&formula(&[(2, E), (1, A)], &[&[1, 2, 2], &[-1, -2, -2]])).unwrap());
    }

    #[test]
    fn gadget_table() {
        let l = [Literal::pos(1), Literal::pos(2), Literal::pos(3)];
        let d = Literal::pos(4);
        let clauses = gadget_clauses(l, d);
        let mut table = Vec::new();
        for true_literals in 0..=3 {
            for dv in [false, true] {
                let mut value = [false; 5];
                for v in value.iter_mut().skip(1).take(true_literals) {
                    *v = true;
                }
                value[4] = dv;
                table.push(clauses.iter().filter(|c| satisfied(c, &value)).count());
            }
        }
        assert_eq!(table, [6, 4, 7, 6, 7, 7, 6, 7]);
    }

    #[test]
    fn chain_on_a_single_clause() {
        let f = formula(&[(1, E)], &[&[1, 1, 1]]);
        let (g, k) = qbf3_to_qmax2sat(&f).unwrap();
        assert_eq!(k, 7);
        assert!(g.clauses.iter().all(|c| c.len() == 2));
        assert_eq!(qmax2sat_value(&g).unwrap(), 7);
    }

    #[test]
    fn star_construction_counts() {
        // two variables, one clause
        let f = formula(&[(2, E), (1, A)], &[&[1, -2]]);
        let (g, cert) = qmax2sat_to_incidence(&f, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (24, 19));
        assert_eq!((cert.leaves, cert.n_prime, cert.k_prime), (18, 4, 5));

        let fig6 = formula(&[(4, E), (3, A), (2, E), (1, A)], &[&[-2, 3], &[1, 3], &[-3, -4]]);
        let (g, cert) = qmax2sat_to_incidence(&fig6, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (192, 183));
        assert_eq!(cert.padding, 0);
        assert_eq!(cert.center(lit(-3)), Some(VertexId(7)));
    }

    #[test]
    fn padding_restores_alternation() {
        let f = formula(&[(1, A), (2, A)], &[&[1, 2]]);
        let (_, cert) = qmax2sat_to_incidence(&f, 1).unwrap();
        // pad ∃, x1 ∀, pad ∃, x2 ∀
        assert_eq!(cert.padding, 2);
        assert_eq!(cert.levels, vec![(1, 3), (2, 1)]);
    }

    #[test]
    fn rejects_bad_input() {
        let f = formula(&[(1, E), (2, E)], &[&[1, 1]]);
        assert_eq!(qmax2sat_to_incidence(&f, 1).unwrap_err(), ReductionError::RepeatedLiteral(0));
        assert!(QBFormula::new(vec![(1, E)], vec![vec![Literal::pos(2)]]).is_err());
        assert!(mb_to_mm_universal(&Hypergraph::graph(2, &[(0, 1)], EdgeColor::Green).unwrap()).is_err());
    }

    #[test]
    fn right_score_tracks_formula_value() {
        use crate::board::{Player, Position};
        use crate::solver::{SolveOptions, Solver};
        let solver = Solver::new(SolveOptions::default().with_twins());
        for f in [
            formula(&[(2, E), (1, A)], &[&[1, -2]]),
            formula(&[(1, A), (2, E)], &[&[1, 2], &[-1, -2]]),
            formula(&[(4, E), (3, A), (2, E), (1, A)], &[&[-2, 3], &[1, 3], &[-3, -4]]),
        ] {
            let val = qmax2sat_value(&f).unwrap();
            let (g, cert) = qmax2sat_to_incidence(&f, 0).unwrap();
            let rs = solver.value(&Position::new(g), Player::Right).unwrap();
            assert_eq!(rs, cert.n_prime + cert.m as i64 - val);
        }
    }

    #[test]
    fn universal_lift_shape() {
        let g = Hypergraph::graph(2, &[(0, 1)], EdgeColor::Blue).unwrap();
        let h = mb_to_mm_universal(&g).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges()[0].vertices, vec![VertexId(0), VertexId(1), VertexId(2)]);
        assert!(h.all_colored(EdgeColor::Green));
    }
}
