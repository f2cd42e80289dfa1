//! Test-only helpers: a plain minimax oracle that shares no code with the
//! solver, and seeded random board generators.
#![allow(dead_code)]

use std::collections::HashMap;

use incidence_core::{EdgeColor, Hypergraph, Owner, Player, Position};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Exhaustive minimax over full owner vectors, memoized on the exact state.
pub struct Oracle {
    n: usize,
    edges: Vec<(u64, i64, i64)>,
    memo: HashMap<(u64, u64, bool), i64>,
}

impl Oracle {
    pub fn new(board: &Hypergraph) -> Self {
        assert!(board.vertex_count() <= 64, "oracle supports at most 64 vertices");
        let edges = board
            .edges()
            .iter()
            .map(|e| {
                let mask = e.vertices.iter().fold(0u64, |m, v| m | 1 << v.index());
                let (l, r) = match e.color {
                    EdgeColor::Blue => (1, 0),
                    EdgeColor::Red => (0, 1),
                    EdgeColor::Green => (1, 1),
                };
                (mask, l, r)
            })
            .collect();
        Oracle {
            n: board.vertex_count(),
            edges,
            memo: HashMap::new(),
        }
    }

    fn score(&self, left: u64, right: u64) -> i64 {
        self.edges
            .iter()
            .map(|&(m, l, r)| if left & m == m { l } else if right & m == m { -r } else { 0 })
            .sum()
    }

    fn go(&mut self, left: u64, right: u64, left_moves: bool) -> i64 {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let free = full & !(left | right);
        if free == 0 {
            return self.score(left, right);
        }
        if let Some(&v) = self.memo.get(&(left, right, left_moves)) {
            return v;
        }
        let mut best = if left_moves { i64::MIN } else { i64::MAX };
        for v in 0..self.n {
            if free & (1 << v) == 0 {
                continue;
            }
            let val = if left_moves {
                self.go(left | 1 << v, right, false)
            } else {
                self.go(left, right | 1 << v, true)
            };
            best = if left_moves { best.max(val) } else { best.min(val) };
        }
        self.memo.insert((left, right, left_moves), best);
        best
    }

    pub fn value(&mut self, p: &Position, mover: Player) -> i64 {
        let (mut left, mut right) = (0u64, 0u64);
        for (v, o) in p.owners().iter().enumerate() {
            match o {
                Owner::Claimed(Player::Left) => left |= 1 << v,
                Owner::Claimed(Player::Right) => right |= 1 << v,
                Owner::Free => {}
            }
        }
        self.go(left, right, mover == Player::Left)
    }

    /// Free vertices whose claim attains the optimum for `mover`.
    pub fn optimal_moves(&mut self, p: &Position, mover: Player) -> Vec<usize> {
        let target = self.value(p, mover);
        p.free_vertices()
            .into_iter()
            .filter(|&v| {
                let child = p.claim(mover, v).unwrap();
                self.value(&child, mover.opponent()) == target
            })
            .map(|v| v.index())
            .collect()
    }
}

pub fn oracle_value(p: &Position, mover: Player) -> i64 {
    Oracle::new(p.board()).value(p, mover)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn random_color(rng: &mut ChaCha8Rng) -> EdgeColor {
    [EdgeColor::Blue, EdgeColor::Red, EdgeColor::Green][rng.random_range(0..3)]
}

/// Random partisan hypergraph: distinct edges of size 1 to 3, random colors.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize) -> Hypergraph {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    if n > 0 {
        let m = rng.random_range(0..=2 * n);
        for _ in 0..m {
            let size = rng.random_range(1..=3.min(n));
            let mut e: Vec<usize> = rand::seq::index::sample(rng, n, size).into_vec();
            e.sort_unstable();
            if seen.insert(e.clone()) {
                edges.push((e, random_color(rng)));
            }
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

/// Random claims over a board, leaving about half the vertices free.
pub fn random_claims(rng: &mut ChaCha8Rng, board: Hypergraph) -> Position {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for v in 0..board.vertex_count() {
        match rng.random_range(0..4) {
            0 => left.push(v),
            1 => right.push(v),
            _ => {}
        }
    }
    Position::with_claims(board, left, right).unwrap()
}

pub fn random_position(rng: &mut ChaCha8Rng, max_n: usize) -> Position {
    let n = rng.random_range(0..=max_n);
    let board = random_hypergraph(rng, n);
    random_claims(rng, board)
}
