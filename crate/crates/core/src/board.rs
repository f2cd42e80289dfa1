//! Boards and positions of partisan scoring positional games.
//!
//! A board is a hypergraph whose hyperedges are colored blue (only Left
//! scores them), red (only Right scores them) or green (both do). A position
//! adds the sets of vertices already claimed by each player. All values are
//! immutable; every "mutating" operation returns a fresh value.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of a vertex, dense in `0..n` within one hypergraph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    Blue,
    Red,
    Green,
}

impl EdgeColor {
    /// Blue and red swap, green is fixed.
    pub fn negated(self) -> Self {
        match self {
            EdgeColor::Blue => EdgeColor::Red,
            EdgeColor::Red => EdgeColor::Blue,
            EdgeColor::Green => EdgeColor::Green,
        }
    }

    pub fn scores_for(self, player: Player) -> bool {
        matches!(
            (self, player),
            (EdgeColor::Green, _) | (EdgeColor::Blue, Player::Left) | (EdgeColor::Red, Player::Right)
        )
    }

    pub fn letter(self) -> char {
        match self {
            EdgeColor::Blue => 'B',
            EdgeColor::Red => 'R',
            EdgeColor::Green => 'G',
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Left => "left",
            Player::Right => "right",
        })
    }
}

/// Scoring convention, always derived from the edge colors.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    MakerBreaker,
    MakerMaker,
    Partisan,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::MakerBreaker => "maker-breaker",
            Convention::MakerMaker => "maker-maker",
            Convention::Partisan => "partisan",
        })
    }
}

/// Game values of a position for both possible first players.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ScorePair {
    pub ls: i64,
    pub rs: i64,
}

impl ScorePair {
    pub const fn new(ls: i64, rs: i64) -> Self {
        ScorePair { ls, rs }
    }

    pub fn shifted(self, by: i64) -> Self {
        ScorePair::new(self.ls + by, self.rs + by)
    }
}

impl fmt::Display for ScorePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ls, self.rs)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoardError {
    #[error("vertex {vertex} out of range for a board with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("hyperedge {index} is empty")]
    EmptyEdge { index: usize },
    #[error("hyperedge {index} lists vertex {vertex} twice")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("hyperedge {index} duplicates an earlier hyperedge")]
    DuplicateEdge { index: usize },
    #[error("vertex {0} is already claimed")]
    AlreadyClaimed(VertexId),
    #[error("vertex {0} is claimed by both players")]
    OverlappingClaims(VertexId),
    #[error("position is not terminal: {0} free vertices remain")]
    NotTerminal(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("score overflow")]
    Overflow,
}

/// One colored hyperedge; members are sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperedge {
    pub color: EdgeColor,
    pub vertices: Vec<VertexId>,
}

impl Hyperedge {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// A validated colored hypergraph with cached degree statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
    multi: bool,
    incidence: Vec<Vec<usize>>,
    max_degree: usize,
    pair_multiplicity: usize,
}

impl Hypergraph {
    /// Builds a simple hypergraph: duplicate `(set, color)` pairs are rejected.
    pub fn new<I, S>(n: usize, edges: I) -> Result<Self, BoardError>
    where
        I: IntoIterator<Item = (S, EdgeColor)>,
        S: IntoIterator<Item = usize>,
    {
        Self::build(n, edges, false)
    }

    /// Builds a hypergraph that may repeat hyperedges.
    pub fn with_multi_edges<I, S>(n: usize, edges: I) -> Result<Self, BoardError>
    where
        I: IntoIterator<Item = (S, EdgeColor)>,
        S: IntoIterator<Item = usize>,
    {
        Self::build(n, edges, true)
    }

    /// A graph (2-uniform board) with every edge colored `color`.
    pub fn graph(n: usize, edges: &[(usize, usize)], color: EdgeColor) -> Result<Self, BoardError> {
        Self::new(n, edges.iter().map(|&(u, v)| ([u, v], color)))
    }

    fn build<I, S>(n: usize, edges: I, multi: bool) -> Result<Self, BoardError>
    where
        I: IntoIterator<Item = (S, EdgeColor)>,
        S: IntoIterator<Item = usize>,
    {
        let mut list = Vec::new();
        let mut seen = BTreeSet::new();
        for (index, (members, color)) in edges.into_iter().enumerate() {
            let mut vertices = Vec::new();
            for v in members {
                if v >= n {
                    return Err(BoardError::VertexOutOfRange { vertex: v, n });
                }
                vertices.push(VertexId::from(v));
            }
            vertices.sort_unstable();
            if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
                return Err(BoardError::RepeatedVertex { index, vertex: w[0].index() });
            }
            if vertices.is_empty() {
                return Err(BoardError::EmptyEdge { index });
            }
            let edge = Hyperedge { color, vertices };
            if !multi && !seen.insert(edge.clone()) {
                return Err(BoardError::DuplicateEdge { index });
            }
            list.push(edge);
        }
        Ok(Self::from_validated(n, list, multi))
    }

    fn from_validated(n: usize, edges: Vec<Hyperedge>, multi: bool) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut pairs: HashMap<(u32, u32), usize> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            for (a, &x) in e.vertices.iter().enumerate() {
                incidence[x.index()].push(i);
                for &y in &e.vertices[a + 1..] {
                    *pairs.entry((x.0, y.0)).or_default() += 1;
                }
            }
        }
        let max_degree = incidence.iter().map(Vec::len).max().unwrap_or(0);
        let pair_multiplicity = pairs.values().copied().max().unwrap_or(0);
        Hypergraph {
            n,
            edges,
            multi,
            incidence,
            max_degree,
            pair_multiplicity,
        }
    }

    pub fn empty() -> Self {
        Self::from_validated(0, Vec::new(), false)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn allows_multi_edges(&self) -> bool {
        self.multi
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId::from)
    }

    /// Indices of the hyperedges containing `v`.
    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.incidence[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.index()].len()
    }

    /// Δ(H): the maximum vertex degree.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// ℓ(H): the maximum number of hyperedges through one pair of distinct vertices.
    pub fn pair_multiplicity(&self) -> usize {
        self.pair_multiplicity
    }

    /// True when every hyperedge has exactly two vertices (vacuously true without edges).
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    pub fn all_colored(&self, color: EdgeColor) -> bool {
        self.edges.iter().all(|e| e.color == color)
    }

    /// Maker-Breaker when every edge is blue (including the edgeless board),
    /// Maker-Maker when every edge is green, partisan otherwise.
    pub fn convention(&self) -> Convention {
        if self.all_colored(EdgeColor::Blue) {
            Convention::MakerBreaker
        } else if self.all_colored(EdgeColor::Green) {
            Convention::MakerMaker
        } else {
            Convention::Partisan
        }
    }

    /// Neighbours of `v` through 2-element hyperedges, with multiplicity, sorted.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.incidence[v.index()]
            .iter()
            .filter_map(|&i| {
                let e = &self.edges[i];
                (e.len() == 2).then(|| if e.vertices[0] == v { e.vertices[1] } else { e.vertices[0] })
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Blue and red swapped.
    pub fn negated(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Hyperedge {
                color: e.color.negated(),
                vertices: e.vertices.clone(),
            })
            .collect();
        Self::from_validated(self.n, edges, self.multi)
    }

    /// Disjoint union, with the vertices of `other` shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Self {
        let shift = self.n as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Hyperedge {
            color: e.color,
            vertices: e.vertices.iter().map(|v| VertexId(v.0 + shift)).collect(),
        }));
        Self::from_validated(self.n + other.n, edges, self.multi || other.multi)
    }

    /// Same hyperedges with every color replaced by `color`.
    pub fn recolored(&self, color: EdgeColor) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Hyperedge {
                color,
                vertices: e.vertices.clone(),
            })
            .collect();
        Self::from_validated(self.n, edges, self.multi)
    }
}

/// Ownership of one vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Free,
    Claimed(Player),
}

/// A hypergraph together with the vertices claimed so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    board: Arc<Hypergraph>,
    owner: Vec<Owner>,
    // start offsets of the summands when built by `disjoint_sum`
    blocks: Vec<usize>,
}

impl Position {
    /// The fresh position on `board`.
    pub fn new(board: Hypergraph) -> Self {
        Self::from_arc(Arc::new(board))
    }

    pub fn from_arc(board: Arc<Hypergraph>) -> Self {
        let n = board.vertex_count();
        Position {
            board,
            owner: vec![Owner::Free; n],
            blocks: vec![0],
        }
    }

    /// A position with the given claimed sets.
    pub fn with_claims(
        board: Hypergraph,
        left: impl IntoIterator<Item = usize>,
        right: impl IntoIterator<Item = usize>,
    ) -> Result<Self, BoardError> {
        let mut pos = Self::new(board);
        let n = pos.owner.len();
        for (set, player) in [(left.into_iter().collect::<Vec<_>>(), Player::Left), (right.into_iter().collect(), Player::Right)] {
            for v in set {
                if v >= n {
                    return Err(BoardError::VertexOutOfRange { vertex: v, n });
                }
                match pos.owner[v] {
                    Owner::Free => pos.owner[v] = Owner::Claimed(player),
                    Owner::Claimed(p) if p == player => {}
                    Owner::Claimed(_) => return Err(BoardError::OverlappingClaims(VertexId::from(v))),
                }
            }
        }
        Ok(pos)
    }

    pub fn empty() -> Self {
        Self::new(Hypergraph::empty())
    }

    pub fn board(&self) -> &Hypergraph {
        &self.board
    }

    pub fn board_arc(&self) -> &Arc<Hypergraph> {
        &self.board
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, v: VertexId) -> Owner {
        self.owner[v.index()]
    }

    pub fn owners(&self) -> &[Owner] {
        &self.owner
    }

    pub fn is_free(&self, v: VertexId) -> bool {
        self.owner[v.index()] == Owner::Free
    }

    pub fn claimed_by(&self, player: Player) -> Vec<VertexId> {
        self.vertices_where(Owner::Claimed(player))
    }

    pub fn free_vertices(&self) -> Vec<VertexId> {
        self.vertices_where(Owner::Free)
    }

    pub fn free_count(&self) -> usize {
        self.owner.iter().filter(|&&o| o == Owner::Free).count()
    }

    fn vertices_where(&self, o: Owner) -> Vec<VertexId> {
        (0..self.owner.len())
            .filter(|&i| self.owner[i] == o)
            .map(VertexId::from)
            .collect()
    }

    pub fn is_terminal(&self) -> bool {
        self.owner.iter().all(|&o| o != Owner::Free)
    }

    pub fn convention(&self) -> Convention {
        self.board.convention()
    }

    /// Start offsets of the summands of a disjoint sum (`[0]` for a plain position).
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// `who` claims the free vertex `v`.
    pub fn claim(&self, who: Player, v: VertexId) -> Result<Position, BoardError> {
        let n = self.owner.len();
        if v.index() >= n {
            return Err(BoardError::VertexOutOfRange { vertex: v.index(), n });
        }
        if self.owner[v.index()] != Owner::Free {
            return Err(BoardError::AlreadyClaimed(v));
        }
        let mut next = self.clone();
        next.owner[v.index()] = Owner::Claimed(who);
        Ok(next)
    }

    /// Releases a claimed vertex (used by interactive undo).
    pub fn unclaim(&self, v: VertexId) -> Position {
        let mut next = self.clone();
        next.owner[v.index()] = Owner::Free;
        next
    }

    /// Colors blue and red exchanged, as well as the claimed sets.
    pub fn negate(&self) -> Position {
        Position {
            board: Arc::new(self.board.negated()),
            owner: self
                .owner
                .iter()
                .map(|&o| match o {
                    Owner::Free => Owner::Free,
                    Owner::Claimed(p) => Owner::Claimed(p.opponent()),
                })
                .collect(),
            blocks: self.blocks.clone(),
        }
    }

    /// The game whose moves are moves in either summand. Vertices of `other`
    /// are shifted by `self.vertex_count()`.
    pub fn disjoint_sum(&self, other: &Position) -> Position {
        let shift = self.owner.len();
        let mut owner = self.owner.clone();
        owner.extend_from_slice(&other.owner);
        let mut blocks = self.blocks.clone();
        if other.owner.is_empty() {
            // neutral element
        } else if shift == 0 {
            blocks = other.blocks.clone();
        } else {
            blocks.extend(other.blocks.iter().map(|b| b + shift));
        }
        Position {
            board: Arc::new(self.board.disjoint_union(&other.board)),
            owner,
            blocks,
        }
    }

    /// Points secured so far: Left's completed blue/green edges minus Right's
    /// completed red/green edges.
    pub fn secured_score(&self) -> Result<i64, BoardError> {
        let mut score: i64 = 0;
        for e in self.board.edges() {
            let first = self.owner[e.vertices[0].index()];
            let Owner::Claimed(p) = first else { continue };
            if !e.color.scores_for(p) {
                continue;
            }
            if e.vertices.iter().all(|v| self.owner[v.index()] == first) {
                score = match p {
                    Player::Left => score.checked_add(1),
                    Player::Right => score.checked_sub(1),
                }
                .ok_or(BoardError::Overflow)?;
            }
        }
        Ok(score)
    }

    /// Final score of a terminal position.
    pub fn terminal_score(&self) -> Result<i64, BoardError> {
        let free = self.free_count();
        if free > 0 {
            return Err(BoardError::NotTerminal(free));
        }
        self.secured_score()
    }

    /// Number of neighbours of `v` (through 2-edges) owned as `owner`, with multiplicity.
    pub fn neighbors_owned(&self, v: VertexId, owner: Owner) -> usize {
        self.board
            .neighbors(v)
            .into_iter()
            .filter(|&u| self.owner[u.index()] == owner)
            .count()
    }
}

/// Named board families with documented vertex numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Blue path on `n` vertices numbered along the path.
    PathL(usize),
    /// Red path on `n` vertices numbered along the path.
    PathR(usize),
    /// Blue cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    Cycle(usize),
    /// Blue complete graph.
    Complete(usize),
    /// Blue star with center 0 and leaves `1..=leaves`.
    Star(usize),
    /// Blue complete binary tree of depth `k`, numbered breadth-first from the root 0.
    BinaryTree(u32),
    /// The 14-vertex graph with distinct optimal first moves for the two players.
    /// `u` is vertex 0 and `v` is vertex 8.
    Fig2,
    /// Green hypergraph with a universal vertex 0, the singleton `{0}` and
    /// `delta - 1` pairs `{0, i}`.
    Fig3Star(usize),
    /// Disjoint union of blue paths, concatenated in order.
    UnionPaths(Vec<usize>),
}

impl Family {
    pub fn build(&self) -> Result<Hypergraph, BoardError> {
        let blue = EdgeColor::Blue;
        match self {
            Family::PathL(n) => Hypergraph::graph(*n, &path_edges(*n), blue),
            Family::PathR(n) => Hypergraph::graph(*n, &path_edges(*n), EdgeColor::Red),
            Family::Cycle(n) => {
                if *n < 3 {
                    return Err(BoardError::InvalidParams(format!("cycle needs at least 3 vertices, got {n}")));
                }
                let mut edges = path_edges(*n);
                edges.push((n - 1, 0));
                Hypergraph::graph(*n, &edges, blue)
            }
            Family::Complete(n) => {
                let edges: Vec<_> = (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j))).collect();
                Hypergraph::graph(*n, &edges, blue)
            }
            Family::Star(leaves) => {
                let edges: Vec<_> = (1..=*leaves).map(|i| (0, i)).collect();
                Hypergraph::graph(leaves + 1, &edges, blue)
            }
            Family::BinaryTree(k) => {
                if *k > 20 {
                    return Err(BoardError::InvalidParams(format!("binary tree depth {k} too large")));
                }
                let n = (1usize << (k + 1)) - 1;
                let edges: Vec<_> = (1..n).map(|i| ((i - 1) / 2, i)).collect();
                Hypergraph::graph(n, &edges, blue)
            }
            Family::Fig2 => {
                // u=0 with leaves 1..=4, u-5, 5 with leaves 6,7; v=8 with leaves 9..=12, v-13
                let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6), (5, 7)];
                edges.extend([(8, 9), (8, 10), (8, 11), (8, 12), (8, 13)]);
                Hypergraph::graph(14, &edges, blue)
            }
            Family::Fig3Star(delta) => {
                if *delta == 0 {
                    return Err(BoardError::InvalidParams("star hypergraph needs delta >= 1".into()));
                }
                let mut edges: Vec<(Vec<usize>, EdgeColor)> = vec![(vec![0], EdgeColor::Green)];
                edges.extend((1..*delta).map(|i| (vec![0, i], EdgeColor::Green)));
                Hypergraph::new(*delta, edges)
            }
            Family::UnionPaths(lengths) => {
                let mut g = Hypergraph::empty();
                for &len in lengths {
                    g = g.disjoint_union(&Hypergraph::graph(len, &path_edges(len), blue)?);
                }
                Ok(g)
            }
        }
    }
}

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Shorthand for a fresh position on a generated family.
pub fn generate(family: Family) -> Result<Position, BoardError> {
    Ok(Position::new(family.build()?))
}

/// The endgame of the small example board: 7 vertices, 10 edges of the
/// given color, Left owning `{1, 4, 5, 6}` and Right `{0, 2, 3}`.
pub fn fig1_endgame(color: EdgeColor) -> Position {
    let edges = [
        (0, 1),
        (0, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 5),
        (3, 5),
        (4, 5),
        (4, 6),
        (5, 6),
    ];
    let board = Hypergraph::graph(7, &edges, color).expect("static board");
    Position::with_claims(board, [1, 4, 5, 6], [0, 2, 3]).expect("static claims")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_l(n: usize) -> Position {
        generate(Family::PathL(n)).unwrap()
    }

    #[test]
    fn build_validates_edges() {
        let g = Hypergraph::new(2, [(vec![0, 1], EdgeColor::Blue)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            Hypergraph::new(1, [(vec![0, 1], EdgeColor::Blue)]),
            Err(BoardError::VertexOutOfRange { vertex: 1, n: 1 })
        );
        assert_eq!(
            Hypergraph::new(3, [(Vec::<usize>::new(), EdgeColor::Blue)]),
            Err(BoardError::EmptyEdge { index: 0 })
        );
        let dup = [(vec![0, 1], EdgeColor::Blue), (vec![1, 0], EdgeColor::Blue)];
        assert_eq!(Hypergraph::new(2, dup.clone()), Err(BoardError::DuplicateEdge { index: 1 }));
        assert_eq!(Hypergraph::with_multi_edges(2, dup).unwrap().edge_count(), 2);
        // same set, different color is not a duplicate
        assert!(Hypergraph::new(2, [(vec![0, 1], EdgeColor::Blue), (vec![0, 1], EdgeColor::Red)]).is_ok());
    }

    #[test]
    fn degree_statistics() {
        let fig1 = fig1_endgame(EdgeColor::Green);
        let mut degrees: Vec<_> = fig1.board().vertices().map(|v| fig1.board().degree(v)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degrees, vec![4, 3, 3, 3, 3, 2, 2]);
        assert_eq!(fig1.board().max_degree(), 4);
        assert_eq!(fig1.board().pair_multiplicity(), 1);
        let star = Family::Fig3Star(5).build().unwrap();
        assert_eq!(star.max_degree(), 5);
        assert_eq!(star.edge_count(), 5);
        assert_eq!(star.convention(), Convention::MakerMaker);
        assert!(!star.is_graph());
    }

    #[test]
    fn fig1_scores_in_both_conventions() {
        assert_eq!(fig1_endgame(EdgeColor::Green).terminal_score(), Ok(2));
        assert_eq!(fig1_endgame(EdgeColor::Blue).terminal_score(), Ok(4));
        assert_eq!(fig1_endgame(EdgeColor::Blue).convention(), Convention::MakerBreaker);
    }

    #[test]
    fn terminal_score_rules() {
        let p = Position::with_claims(Family::PathL(2).build().unwrap(), [0, 1], []).unwrap();
        assert_eq!(p.terminal_score(), Ok(1));
        assert_eq!(path_l(2).terminal_score(), Err(BoardError::NotTerminal(2)));
        // a green edge half owned by each player scores for nobody
        let g = Hypergraph::new(2, [(vec![0, 1], EdgeColor::Green)]).unwrap();
        assert_eq!(Position::with_claims(g, [0], [1]).unwrap().terminal_score(), Ok(0));
        let r = Position::with_claims(Family::PathR(3).build().unwrap(), [], [0, 1, 2]).unwrap();
        assert_eq!(r.terminal_score(), Ok(-2));
    }

    #[test]
    fn negate_swaps_colors_and_claims() {
        let p = path_l(4);
        assert_eq!(p.negate().board(), &Family::PathR(4).build().unwrap());
        let q = p.claim(Player::Left, VertexId(1)).unwrap();
        assert_eq!(q.negate().negate(), q);
        assert_eq!(q.negate().claimed_by(Player::Right), vec![VertexId(1)]);

        let g = Hypergraph::new(2, [(vec![0, 1], EdgeColor::Green)]).unwrap();
        let p = Position::with_claims(g.clone(), [0], []).unwrap();
        let n = p.negate();
        assert_eq!(n.board(), &g);
        assert_eq!(n.claimed_by(Player::Right), vec![VertexId(0)]);
        assert!(n.claimed_by(Player::Left).is_empty());
    }

    #[test]
    fn disjoint_sum_shifts_indices() {
        let s = path_l(3).disjoint_sum(&generate(Family::PathR(3)).unwrap());
        assert_eq!(s.vertex_count(), 6);
        assert_eq!(s.blocks(), &[0, 3]);
        assert_eq!(s.board().edges()[2].vertices, vec![VertexId(3), VertexId(4)]);
        assert_eq!(s.board().edges()[2].color, EdgeColor::Red);
        assert_eq!(s.convention(), Convention::Partisan);

        let p = path_l(5).claim(Player::Right, VertexId(2)).unwrap();
        assert_eq!(p.disjoint_sum(&Position::empty()), p);
        assert_eq!(Position::empty().disjoint_sum(&p), p);
    }

    #[test]
    fn claim_rules() {
        let p = path_l(2).claim(Player::Left, VertexId(0)).unwrap();
        assert_eq!(p.claimed_by(Player::Left), vec![VertexId(0)]);
        assert_eq!(p.claim(Player::Right, VertexId(0)), Err(BoardError::AlreadyClaimed(VertexId(0))));
        assert!(matches!(p.claim(Player::Right, VertexId(7)), Err(BoardError::VertexOutOfRange { .. })));
        assert_eq!(path_l(2).free_count(), 2);
    }

    #[test]
    fn generators() {
        let p5 = Family::PathL(5).build().unwrap();
        assert_eq!(p5.edge_count(), 4);
        assert!(p5.edges().iter().all(|e| e.vertices[1].0 == e.vertices[0].0 + 1));
        let t2 = Family::BinaryTree(2).build().unwrap();
        assert_eq!((t2.vertex_count(), t2.edge_count()), (7, 6));
        assert_eq!(t2.neighbors(VertexId(0)), vec![VertexId(1), VertexId(2)]);
        assert_eq!(Family::BinaryTree(0).build().unwrap().vertex_count(), 1);
        let fig2 = Family::Fig2.build().unwrap();
        assert_eq!((fig2.vertex_count(), fig2.edge_count()), (14, 12));
        assert_eq!(Family::Complete(8).build().unwrap().edge_count(), 28);
        assert!(Family::Cycle(2).build().is_err());
        assert_eq!(Family::UnionPaths(vec![3, 5]).build().unwrap().edge_count(), 6);
        assert_eq!(Hypergraph::empty().convention(), Convention::MakerBreaker);
    }
}
