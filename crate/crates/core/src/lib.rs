//! Partisan scoring positional games on colored hypergraphs, with a focus on
//! Incidence (the game played on the edges of a graph).
//!
//! * [`board`]: hypergraphs, positions, generators.
//! * [`solver`]: exact values, equivalence tests, twin and domination tools.
//! * [`kernel`]: neighbourhood diversity and the cubic kernel.
//! * [`reductions`]: QBF evaluators and the hardness constructions.
//! * [`enumerate`]: small graphs up to isomorphism.
//! * [`io`]: board and formula files, DOT export.
//! * [`formulas`]: closed forms and bounds, exact via [`dyadic`] rationals.

pub mod board;
pub mod dyadic;
pub mod enumerate;
pub mod formulas;
pub mod io;
pub mod kernel;
pub mod reductions;
pub mod solver;

pub use board::{
    fig1_endgame, generate, BoardError, Convention, EdgeColor, Family, Hyperedge, Hypergraph, Owner, Player, Position,
    ScorePair, VertexId,
};
pub use solver::{
    canonical_key, dominates, milnor_equivalent, score_pair, solve, twin_reduce, CanonicalKey, SolveError,
    SolveOptions, SolveResult, Solver,
};
pub use dyadic::Dyadic;
