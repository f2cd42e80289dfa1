//! Neighbourhood diversity and the cubic kernel for Maker-Breaker Incidence.
//!
//! The kernel works in four steps: pair off free vertices of the same type,
//! drop edges already won by Left (and Right's vertices), flatten large gaps
//! in the Left-degree sequence, and finally replace Left's vertices by a
//! small set `U` reproducing every free vertex's Left degree.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::board::{BoardError, EdgeColor, Hypergraph, Owner, Player, Position, VertexId};
use crate::solver::{SolveError, Solver};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("kernelization needs an all-blue graph")]
    NotAGraph,
    #[error("threshold overflow")]
    Overflow,
    #[error("transcript line {line}: {message}")]
    Transcript { line: usize, message: String },
    #[error("transcript does not match the instance: {0}")]
    Replay(String),
    #[error(transparent)]
    Board(#[from] BoardError),
}

/// Vertices grouped by type: `u`, `v` share a type iff `N(u) \ {v} = N(v) \ {u}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePartition {
    pub classes: Vec<Vec<VertexId>>,
}

impl TypePartition {
    pub fn nd(&self) -> usize {
        self.classes.len()
    }

    /// Class index of every vertex.
    pub fn class_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, class) in self.classes.iter().enumerate() {
            for v in class {
                of[v.index()] = i;
            }
        }
        of
    }
}

/// Coarsest type partition of a graph; classes are listed by smallest member.
pub fn nd_partition(g: &Hypergraph) -> Result<TypePartition, KernelError> {
    if !g.is_graph() {
        return Err(KernelError::NotAGraph);
    }
    let mut groups: BTreeMap<(bool, Vec<VertexId>), Vec<VertexId>> = BTreeMap::new();
    for v in g.vertices() {
        let mut open = g.neighbors(v);
        open.dedup();
        let mut closed = open.clone();
        let at = closed.partition_point(|&x| x < v);
        closed.insert(at, v);
        groups.entry((false, open)).or_default().push(v);
        groups.entry((true, closed)).or_default().push(v);
    }
    // a vertex has twins through at most one of its two neighbourhoods
    let mut placed = vec![false; g.vertex_count()];
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    for members in groups.into_values().filter(|m| m.len() >= 2) {
        for v in &members {
            placed[v.index()] = true;
        }
        classes.push(members);
    }
    classes.extend(g.vertices().filter(|v| !placed[v.index()]).map(|v| vec![v]));
    classes.sort_by_key(|c| c[0]);
    Ok(TypePartition { classes })
}

pub fn neighborhood_diversity(g: &Hypergraph) -> Result<usize, KernelError> {
    Ok(nd_partition(g)?.nd())
}

/// Is the score of `position` with `first` to move at least `k`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInstance {
    pub position: Position,
    pub k: i64,
    pub first: Player,
}

impl KernelInstance {
    pub fn new(position: Position, k: i64, first: Player) -> Self {
        KernelInstance { position, k, first }
    }

    pub fn decide(&self, solver: &Solver) -> Result<bool, SolveError> {
        Ok(solver.value(&self.position, self.first)? >= self.k)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Step3Round {
    /// 1-based position in the sorted degree sequence.
    pub i: usize,
    pub s: i64,
    pub k_delta: i64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KernelOutcome {
    Kernel,
    TrivialTrue,
    TrivialFalse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTranscript {
    pub step1_pairs: Vec<(VertexId, VertexId)>,
    pub step2_edges_removed: usize,
    pub step3_rounds: Vec<Step3Round>,
    pub step4_u_size: usize,
    pub outcome: KernelOutcome,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub struct KernelOptions {
    /// Always count Left's share of Step 3 as `⌈i/2⌉`, whoever moves first.
    pub literal_share: bool,
}

fn left_share(i: usize, first: Player, literal: bool) -> i64 {
    if literal || first == Player::Left {
        i.div_ceil(2) as i64
    } else {
        (i / 2) as i64
    }
}

pub fn kernelize(inst: &KernelInstance) -> Result<(KernelInstance, KernelTranscript), KernelError> {
    kernelize_with(inst, KernelOptions::default())
}

fn check_input(inst: &KernelInstance) -> Result<(), KernelError> {
    let g = inst.position.board();
    if g.is_graph() && g.all_colored(EdgeColor::Blue) {
        Ok(())
    } else {
        Err(KernelError::NotAGraph)
    }
}

pub fn kernelize_with(
    inst: &KernelInstance,
    options: KernelOptions,
) -> Result<(KernelInstance, KernelTranscript), KernelError> {
    check_input(inst)?;
    let partition = nd_partition(inst.position.board())?;

    // Step 1: within each type, one free vertex to each player
    let mut pos = inst.position.clone();
    let mut pairs = Vec::new();
    for class in &partition.classes {
        let free: Vec<VertexId> = class.iter().copied().filter(|&v| pos.is_free(v)).collect();
        for pair in free.chunks_exact(2) {
            pos = pos.claim(Player::Left, pair[0])?;
            pos = pos.claim(Player::Right, pair[1])?;
            pairs.push((pair[0], pair[1]));
        }
    }
    reduce(inst, &pos, pairs, options, None)
}

/// Reapplies a transcript to its input instance.
pub fn replay(inst: &KernelInstance, transcript: &KernelTranscript) -> Result<KernelInstance, KernelError> {
    check_input(inst)?;
    let mut pos = inst.position.clone();
    for &(l, r) in &transcript.step1_pairs {
        pos = pos.claim(Player::Left, l)?;
        pos = pos.claim(Player::Right, r)?;
    }
    let (out, redone) = reduce(
        inst,
        &pos,
        transcript.step1_pairs.clone(),
        KernelOptions::default(),
        Some(&transcript.step3_rounds),
    )?;
    if redone != *transcript {
        return Err(KernelError::Replay("recorded counts differ from the replayed ones".into()));
    }
    Ok(out)
}

/// Steps 2 to 4 after Step 1 produced `pos`. With `given` rounds, Step 3
/// applies them instead of searching for gaps.
fn reduce(
    inst: &KernelInstance,
    pos: &Position,
    step1_pairs: Vec<(VertexId, VertexId)>,
    options: KernelOptions,
    given: Option<&[Step3Round]>,
) -> Result<(KernelInstance, KernelTranscript), KernelError> {
    let g = pos.board();
    let left = Owner::Claimed(Player::Left);

    // Step 2: edges already won by Left; Right's vertices carry nothing
    let won = g
        .edges()
        .iter()
        .filter(|e| e.vertices.iter().all(|&v| pos.owner(v) == left))
        .count();
    let mut k = inst.k.checked_sub(won as i64).ok_or(KernelError::Overflow)?;

    // Step 3
    let mut free: Vec<(VertexId, i64)> = pos
        .free_vertices()
        .into_iter()
        .map(|v| (v, pos.neighbors_owned(v, left) as i64))
        .collect();
    free.sort_by_key(|a| std::cmp::Reverse(a.1));
    let r = free.len() as i64;
    let mut rounds = Vec::new();
    loop {
        let p: Vec<i64> = free.iter().map(|f| f.1).collect();
        let gap = |i: usize| p[i - 1] - p.get(i).copied().unwrap_or(0) - r;
        let round = match given {
            Some(given) => match given.get(rounds.len()) {
                Some(&round) if round.i >= 1 && round.i <= p.len() && round.s > 0 && round.s <= gap(round.i) => {
                    Some(round)
                }
                Some(_) => {
                    return Err(KernelError::Replay(format!("step 3 round {} does not apply", rounds.len() + 1)));
                }
                None => None,
            },
            None => (1..=p.len()).find(|&i| gap(i) > 0).map(|i| Step3Round {
                i,
                s: gap(i),
                k_delta: gap(i) * left_share(i, inst.first, options.literal_share),
            }),
        };
        let Some(round) = round else { break };
        for f in free.iter_mut().take(round.i) {
            f.1 -= round.s;
        }
        free.sort_by_key(|a| std::cmp::Reverse(a.1));
        k = k.checked_sub(round.k_delta).ok_or(KernelError::Overflow)?;
        rounds.push(round);
    }

    // Step 4: U = 0..p1, free vertex i becomes p1 + i
    let p1 = free.first().map_or(0, |f| f.1 as usize);
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    for (i, f) in free.iter().enumerate() {
        new_id[f.0.index()] = p1 + i;
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, f) in free.iter().enumerate() {
        edges.extend((0..f.1 as usize).map(|u| (u, p1 + i)));
    }
    for e in g.edges() {
        let (a, b) = (e.vertices[0], e.vertices[1]);
        if pos.is_free(a) && pos.is_free(b) {
            edges.push((new_id[a.index()], new_id[b.index()]));
        }
    }
    let mut transcript = KernelTranscript {
        step1_pairs,
        step2_edges_removed: won,
        step3_rounds: rounds,
        step4_u_size: p1,
        outcome: KernelOutcome::Kernel,
    };
    let out = if k <= 0 {
        transcript.outcome = KernelOutcome::TrivialTrue;
        KernelInstance::new(Position::empty(), 0, inst.first)
    } else if k > edges.len() as i64 {
        transcript.outcome = KernelOutcome::TrivialFalse;
        KernelInstance::new(Position::empty(), 1, inst.first)
    } else {
        let board = Hypergraph::graph(p1 + free.len(), &edges, EdgeColor::Blue)?;
        KernelInstance::new(Position::with_claims(board, 0..p1, [])?, k, inst.first)
    };
    Ok((out, transcript))
}

impl fmt::Display for KernelTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, r) in &self.step1_pairs {
            writeln!(f, "step1 pair {l} {r}")?;
        }
        writeln!(f, "step2 removed {}", self.step2_edges_removed)?;
        for round in &self.step3_rounds {
            writeln!(f, "step3 i {} s {} k-delta {}", round.i, round.s, round.k_delta)?;
        }
        writeln!(f, "step4 u {}", self.step4_u_size)?;
        let outcome = match self.outcome {
            KernelOutcome::Kernel => "kernel",
            KernelOutcome::TrivialTrue => "trivial-true",
            KernelOutcome::TrivialFalse => "trivial-false",
        };
        writeln!(f, "result {outcome}")
    }
}

impl KernelTranscript {
    /// Parses the line format written by `Display`.
    pub fn parse(text: &str) -> Result<Self, KernelError> {
        let mut t = KernelTranscript {
            step1_pairs: Vec::new(),
            step2_edges_removed: 0,
            step3_rounds: Vec::new(),
            step4_u_size: 0,
            outcome: KernelOutcome::Kernel,
        };
        for (n, line) in text.lines().enumerate() {
            let bad = |message: &str| KernelError::Transcript {
                line: n + 1,
                message: message.to_string(),
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> Result<i64, KernelError> {
                words.get(i).and_then(|w| w.parse().ok()).ok_or_else(|| bad("expected a number"))
            };
            match words.as_slice() {
                [] => {}
                ["step1", "pair", _, _] => t
                    .step1_pairs
                    .push((VertexId(num(2)? as u32), VertexId(num(3)? as u32))),
                ["step2", "removed", _] => t.step2_edges_removed = num(2)? as usize,
                ["step3", "i", _, "s", _, "k-delta", _] => t.step3_rounds.push(Step3Round {
                    i: num(2)? as usize,
                    s: num(4)?,
                    k_delta: num(6)?,
                }),
                ["step4", "u", _] => t.step4_u_size = num(2)? as usize,
                ["result", outcome] => {
                    t.outcome = match *outcome {
                        "kernel" => KernelOutcome::Kernel,
                        "trivial-true" => KernelOutcome::TrivialTrue,
                        "trivial-false" => KernelOutcome::TrivialFalse,
                        _ => return Err(bad("unknown result")),
                    }
                }
                _ => return Err(bad("unrecognized line")),
            }
        }
        Ok(t)
    }
}

/// The worked example: five types (a 5-clique, an independent 5-set, a
/// 4-clique, an independent 5-set and a triangle, numbered in that order)
/// with complete joins between types 1-2, 1-3, 1-4 and 2-5; `k = 30`, Left
/// to move.
pub fn fig5_instance() -> KernelInstance {
    let classes: [(std::ops::Range<usize>, bool); 5] =
        [(0..5, true), (5..10, false), (10..14, true), (14..19, false), (19..22, true)];
    let mut edges = Vec::new();
    for (range, clique) in &classes {
        if *clique {
            for a in range.clone() {
                edges.extend((a + 1..range.end).map(|b| (a, b)));
            }
        }
    }
    for (x, y) in [(0, 1), (0, 2), (0, 3), (1, 4)] {
        for a in classes[x].0.clone() {
            edges.extend(classes[y].0.clone().map(|b| (a, b)));
        }
    }
    let board = Hypergraph::graph(22, &edges, EdgeColor::Blue).expect("valid example graph");
    KernelInstance::new(Position::new(board), 30, Player::Left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{generate, Family};

    #[test]
    fn partitions() {
        assert_eq!(neighborhood_diversity(&Family::Complete(5).build().unwrap()).unwrap(), 1);
        let p3 = nd_partition(&Family::PathL(3).build().unwrap()).unwrap();
        assert_eq!(p3.classes, vec![vec![VertexId(0), VertexId(2)], vec![VertexId(1)]]);
        // the ends of P4 see different middles
        assert_eq!(neighborhood_diversity(&Family::PathL(4).build().unwrap()).unwrap(), 4);
        assert_eq!(neighborhood_diversity(&Family::Star(6).build().unwrap()).unwrap(), 2);
        assert_eq!(neighborhood_diversity(&Family::Cycle(5).build().unwrap()).unwrap(), 5);
        assert_eq!(neighborhood_diversity(fig5_instance().position.board()).unwrap(), 5);
    }

    #[test]
    fn fig5_transcript() {
        let inst = fig5_instance();
        let (out, t) = kernelize(&inst).unwrap();
        assert_eq!(t.step2_edges_removed, 16);
        assert_eq!(
            t.step3_rounds,
            vec![Step3Round {
                i: 1,
                s: 1,
                k_delta: 1
            }]
        );
        assert_eq!(t.step4_u_size, 7);
        assert_eq!(out.k, 13);
        assert_eq!(out.position.vertex_count(), 11);
        assert_eq!(replay(&inst, &t).unwrap(), out);
        assert_eq!(KernelTranscript::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn trivial_instances() {
        let empty = Position::new(Hypergraph::graph(3, &[], EdgeColor::Blue).unwrap());
        let (out, t) = kernelize(&KernelInstance::new(empty.clone(), 1, Player::Left)).unwrap();
        assert_eq!((out.k, t.outcome), (1, KernelOutcome::TrivialFalse));
        let (out, t) = kernelize(&KernelInstance::new(empty, 0, Player::Right)).unwrap();
        assert_eq!((out.k, t.outcome), (0, KernelOutcome::TrivialTrue));
    }

    #[test]
    fn decisions_on_paths() {
        let solver = Solver::default();
        for n in 2..9 {
            let p = generate(Family::PathL(n)).unwrap();
            for k in 0..n as i64 {
                for first in [Player::Left, Player::Right] {
                    let inst = KernelInstance::new(p.clone(), k, first);
                    let (out, _) = kernelize(&inst).unwrap();
                    assert_eq!(inst.decide(&solver).unwrap(), out.decide(&solver).unwrap(), "n={n} k={k}");
                }
            }
        }
    }
}
