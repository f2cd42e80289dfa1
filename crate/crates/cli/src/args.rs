use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use incidence_core::{Player, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "incidence", version, about = "Exact solver and tools for scoring positional games on hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a board file and print a JSON result record.
    Solve(SolveArgs),
    /// Evaluate a closed-form score.
    Formula(FormulaArgs),
    /// Test two boards for equivalence (both scores of the difference are 0).
    Equiv(EquivArgs),
    /// Kernelize a Maker-Breaker graph instance.
    Kernelize(KernelizeArgs),
    /// Hardness constructions on quantified formulas and boards.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Print a board file for a named family.
    Gen(GenArgs),
    /// Play interactively against the solver.
    Play(PlayArgs),
    /// Run a quick subset of the acceptance checks.
    Selftest,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mover {
    Left,
    Right,
}

impl From<Mover> for Player {
    fn from(m: Mover) -> Player {
        match m {
            Mover::Left => Player::Left,
            Mover::Right => Player::Right,
        }
    }
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Pair off equivalent vertices (all-blue graphs only).
    #[arg(long)]
    pub twins: bool,
    /// Prune dominated moves (all-blue graphs only).
    #[arg(long)]
    pub domination: bool,
    /// Window search seeded by per-component bounds
    #[arg(long)]
    pub alpha_beta: bool,
    /// Search every move, not one per class of interchangeable moves
    #[arg(long)]
    pub no_symmetry: bool,
    /// Threads for the root moves; node counts may vary above 1.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Abort with exit status 3 after this many search nodes.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Abort with exit status 3 above this many free vertices.
    #[arg(long)]
    pub max_free: Option<usize>,
}

impl EngineArgs {
    pub fn options(&self) -> SolveOptions {
        SolveOptions {
            twin_reduction: self.twins,
            symmetry: !self.no_symmetry,
            domination: self.domination,
            alpha_beta: self.alpha_beta,
            workers: self.workers,
            max_nodes: self.max_nodes,
            size_budget: self.max_free,
            ..SolveOptions::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Board file; `-` or nothing reads standard input.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Side::Both)]
    pub first: Side,
    /// Include the optimal first moves.
    #[arg(long)]
    pub moves: bool,
    /// Also write a Graphviz description of the board to this file.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    /// Add a timing section to the record.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormulaKind {
    /// Blue path on N vertices.
    Path,
    /// Blue path on N vertices with an end claimed by Left.
    ClaimedPath,
    /// Disjoint blue paths with the given lengths.
    UnionPaths,
    /// Blue cycle on N vertices.
    Cycle,
    /// Complete binary tree of depth K.
    BinaryTree,
    /// Maker-Maker score of an all-green graph board file.
    Mm,
    /// Degree window of the Maker-Maker score of an all-green board file.
    MmDelta,
    /// Erdős-Selfridge bounds of an all-blue board file.
    Es,
    /// Potential and greedy move of an all-blue board file.
    Potential,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    #[arg(value_enum)]
    pub kind: FormulaKind,
    /// Sizes, or a board file for the board-based formulas.
    pub params: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Largest combined number of free vertices searched.
    #[arg(long, default_value_t = incidence_core::solver::DEFAULT_EQUIVALENCE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    pub input: Option<PathBuf>,
    /// Score threshold.
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long, value_enum, default_value_t = Mover::Left)]
    pub first: Mover,
    /// Count Left's Step 3 share as ceil(i/2) whoever starts.
    #[arg(long)]
    pub literal_share: bool,
    /// Write the transcript to this file instead of as comments.
    #[arg(long, value_name = "FILE")]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// 3-CNF QBF to Q-Max-2-SAT with threshold 7m.
    Qbf3 { input: Option<PathBuf> },
    /// Q-Max-2-SAT to a Maker-Breaker Incidence board (Right moves first).
    Incidence {
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// All-blue board to a Maker-Maker board with a universal vertex.
    Lift { input: Option<PathBuf> },
    /// Truth value and max-sat game value of a formula.
    Eval { input: Option<PathBuf> },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    PathL,
    PathR,
    ClaimedPath,
    Cycle,
    Complete,
    Star,
    BinaryTree,
    UnionPaths,
    Fig1,
    Fig2,
    Fig3Star,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: GenFamily,
    pub params: Vec<usize>,
    /// Print a Graphviz description instead of a board file.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    /// Board file; moves are read from standard input.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mover::Left)]
    pub human: Mover,
    #[arg(long, value_enum, default_value_t = Mover::Left)]
    pub first: Mover,
    /// Node budget for exact advice; beyond it advice is heuristic.
    #[arg(long, default_value_t = 2_000_000)]
    pub max_nodes: u64,
}
