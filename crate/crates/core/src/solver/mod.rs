//! Exact game values by memoized minimax.
//!
//! Positions are reduced to a secured score plus a sum of connected residual
//! components; each component gets a canonical labelling, so a sum is
//! memoized as a sorted multiset of component keys. Optional reductions:
//! equivalent-vertex pairing and domination pruning (Maker-Breaker graphs
//! only), and alpha-beta windows seeded from per-component bounds.

mod residual;
mod search;
mod twins;

use std::fmt;

use thiserror::Error;

use crate::board::{BoardError, EdgeColor, Owner, Player, Position, ScorePair, VertexId};

use residual::{residual_of, MAX_COMPONENT};
use search::Engine;

/// Free vertices allowed in the sum built by [`milnor_equivalent`] when no
/// explicit budget is configured.
pub const DEFAULT_EQUIVALENCE_BUDGET: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("twin reduction needs an all-blue graph board")]
    TwinsNotApplicable,
    #[error("domination needs an all-blue graph board")]
    DominationNotApplicable,
    #[error("vertex {0} is not free")]
    NotFree(VertexId),
    #[error("component with {size} free vertices exceeds the limit of {limit}")]
    ComponentTooLarge { size: usize, limit: usize },
    #[error("search exceeded the node budget of {limit}")]
    NodeBudget { limit: u64 },
    #[error("position has {size} free vertices, budget is {limit}")]
    SizeBudget { size: usize, limit: usize },
    #[error("cannot start worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Board(#[from] BoardError),
}

impl SolveError {
    /// Errors caused by a resource limit rather than by the input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            SolveError::ComponentTooLarge { .. } | SolveError::NodeBudget { .. } | SolveError::SizeBudget { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Pair off equivalent vertices (all-blue graphs only).
    pub twin_reduction: bool,
    /// Search one representative per class of interchangeable moves.
    pub symmetry: bool,
    /// Skip moves dominated by another move (all-blue graphs only).
    pub domination: bool,
    /// Alpha-beta windows with per-component bounds. Values are unchanged,
    /// node counts differ.
    pub alpha_beta: bool,
    /// Threads used for the root moves.
    pub workers: usize,
    /// Search nodes allowed over the lifetime of the solver.
    pub max_nodes: Option<u64>,
    /// Entries kept before the memo table is flushed.
    pub table_capacity: usize,
    /// Largest number of free vertices accepted.
    pub size_budget: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            twin_reduction: false,
            symmetry: true,
            domination: false,
            alpha_beta: false,
            workers: 1,
            max_nodes: None,
            table_capacity: 1 << 22,
            size_budget: None,
        }
    }
}

impl SolveOptions {
    pub fn with_twins(mut self) -> Self {
        self.twin_reduction = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub value: i64,
    /// Every optimal first move, by increasing index; empty iff terminal.
    pub optimal_moves: Vec<VertexId>,
    pub nodes_expanded: u64,
    pub memo_hits: u64,
}

/// Memo key of a position: equal keys mean equal values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

fn is_blue_graph(p: &Position) -> bool {
    p.board().is_graph() && p.board().all_colored(EdgeColor::Blue)
}

/// A solver with its own memo table, reused across calls.
pub struct Solver {
    engine: Engine,
}

impl Solver {
    pub fn new(options: SolveOptions) -> Self {
        Solver {
            engine: Engine::new(options),
        }
    }

    pub fn options(&self) -> &SolveOptions {
        &self.engine.opts
    }

    /// Number of memoized states.
    pub fn table_len(&self) -> usize {
        self.engine.table_len()
    }

    fn check(&self, p: &Position) -> Result<(), SolveError> {
        let opts = &self.engine.opts;
        if opts.twin_reduction && !is_blue_graph(p) {
            return Err(SolveError::TwinsNotApplicable);
        }
        if opts.domination && !is_blue_graph(p) {
            return Err(SolveError::DominationNotApplicable);
        }
        if let Some(limit) = opts.size_budget {
            let size = p.free_count();
            if size > limit {
                return Err(SolveError::SizeBudget { size, limit });
            }
        }
        Ok(())
    }

    /// Value of `p` with `to_move` moving first, and all optimal first moves.
    pub fn solve(&self, p: &Position, to_move: Player) -> Result<SolveResult, SolveError> {
        self.check(p)?;
        let (n0, h0) = self.engine.counters();
        let (value, optimal_moves) = self.engine.solve_root(p, to_move)?;
        let (n1, h1) = self.engine.counters();
        Ok(SolveResult {
            value,
            optimal_moves,
            nodes_expanded: n1 - n0,
            memo_hits: h1 - h0,
        })
    }

    /// Value only; cheaper than [`Solver::solve`].
    pub fn value(&self, p: &Position, to_move: Player) -> Result<i64, SolveError> {
        self.check(p)?;
        self.engine.value(p, to_move)
    }

    pub fn score_pair(&self, p: &Position) -> Result<ScorePair, SolveError> {
        Ok(ScorePair::new(self.value(p, Player::Left)?, self.value(p, Player::Right)?))
    }

    /// Whether `g + (-h)` has both scores zero.
    pub fn milnor_equivalent(&self, g: &Position, h: &Position) -> Result<bool, SolveError> {
        let sum = g.disjoint_sum(&h.negate());
        let limit = self.engine.opts.size_budget.unwrap_or(DEFAULT_EQUIVALENCE_BUDGET);
        let size = sum.free_count();
        if size > limit {
            return Err(SolveError::SizeBudget { size, limit });
        }
        let opts = &self.engine.opts;
        if opts.twin_reduction || opts.domination {
            // the difference is partisan, so run a plain search
            let plain = Solver::new(SolveOptions {
                twin_reduction: false,
                domination: false,
                ..opts.clone()
            });
            return plain.milnor_equivalent(g, h);
        }
        Ok(self.value(&sum, Player::Left)? == 0 && self.value(&sum, Player::Right)? == 0)
    }
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolveOptions::default())
    }
}

pub fn solve(p: &Position, to_move: Player, options: &SolveOptions) -> Result<SolveResult, SolveError> {
    Solver::new(options.clone()).solve(p, to_move)
}

pub fn score_pair(p: &Position) -> Result<ScorePair, SolveError> {
    Solver::default().score_pair(p)
}

pub fn milnor_equivalent(g: &Position, h: &Position) -> Result<bool, SolveError> {
    Solver::default().milnor_equivalent(g, h)
}

/// Equivalent-vertex reduction of a Maker-Breaker graph position: one
/// vertex of every equivalent free pair goes to each player, until no pair
/// remains. Both scores are preserved.
pub fn twin_reduce(p: &Position) -> Result<Position, SolveError> {
    if !is_blue_graph(p) {
        return Err(SolveError::TwinsNotApplicable);
    }
    let n = p.vertex_count();
    let mut pos = p.clone();
    loop {
        let active: Vec<bool> = (0..n).map(|v| pos.is_free(VertexId::from(v))).collect();
        let mut left_degree = vec![0; n];
        let mut free_adj = vec![Vec::new(); n];
        for v in (0..n).filter(|&v| active[v]) {
            for u in pos.board().neighbors(VertexId::from(v)) {
                match pos.owner(u) {
                    Owner::Free => free_adj[v].push(u.index()),
                    Owner::Claimed(Player::Left) => left_degree[v] += 1,
                    Owner::Claimed(Player::Right) => {}
                }
            }
        }
        let pairs = twins::twin_pairs(&left_degree, &free_adj, &active);
        if pairs.is_empty() {
            return Ok(pos);
        }
        for (a, b) in pairs {
            pos = pos.claim(Player::Left, VertexId::from(a))?;
            pos = pos.claim(Player::Right, VertexId::from(b))?;
        }
    }
}

/// Sufficient condition for `v` to be at least as good a move as `u` for
/// both players: `|N(v) ∩ V_L| >= |N(u) ∩ V_L| + |(N(u) \ N[v]) ∩ V_F|`.
pub fn dominates(p: &Position, v: VertexId, u: VertexId) -> Result<bool, SolveError> {
    if !is_blue_graph(p) {
        return Err(SolveError::DominationNotApplicable);
    }
    for x in [u, v] {
        if x.index() >= p.vertex_count() {
            return Err(BoardError::VertexOutOfRange {
                vertex: x.index(),
                n: p.vertex_count(),
            }
            .into());
        }
        if !p.is_free(x) {
            return Err(SolveError::NotFree(x));
        }
    }
    let left = Owner::Claimed(Player::Left);
    let nv = p.board().neighbors(v);
    let outside = p
        .board()
        .neighbors(u)
        .into_iter()
        .filter(|&w| w != v && p.is_free(w) && !nv.contains(&w))
        .count();
    Ok(p.neighbors_owned(v, left) >= p.neighbors_owned(u, left) + outside)
}

/// Key of a position with its mover: components keyed independently and
/// combined as a sorted multiset, together with the secured score.
pub fn canonical_key(p: &Position, to_move: Player) -> Result<CanonicalKey, SolveError> {
    let root = residual_of(p)?;
    let mut keys: Vec<&[u8]> = root.components.iter().map(|(c, _)| c.key.as_slice()).collect();
    keys.sort_unstable();
    let mut bytes = vec![match to_move {
        Player::Left => b'L',
        Player::Right => b'R',
    }];
    bytes.extend_from_slice(&root.base.to_le_bytes());
    for k in keys {
        bytes.extend_from_slice(&(k.len() as u16).to_le_bytes());
        bytes.extend_from_slice(k);
    }
    Ok(CanonicalKey(bytes))
}

/// Largest connected free part the solver accepts.
pub const COMPONENT_LIMIT: usize = MAX_COMPONENT;
