//! Memoized minimax over sums of canonical components.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::board::{Player, Position, VertexId};

use super::residual::{apply_move, graph_view, reduce_twins, residual_of, split, Component, RawGame};
use super::{SolveError, SolveOptions};

pub(crate) const NEG: i64 = i64::MIN / 4;
pub(crate) const POS: i64 = i64::MAX / 4;

type Comps = Vec<Arc<Component>>;

#[derive(Copy, Clone, Debug)]
struct Bounds {
    lo: i64,
    hi: i64,
}

pub(crate) struct Engine {
    pub opts: SolveOptions,
    table: DashMap<Vec<u8>, Bounds>,
    nodes: AtomicU64,
    hits: AtomicU64,
}

/// A root move class: every member leads to the same value.
struct RootClass {
    members: Vec<VertexId>,
    // None plays a vertex outside every live hyperedge
    play: Option<(usize, usize)>,
}

impl Engine {
    pub fn new(opts: SolveOptions) -> Self {
        Engine {
            opts,
            table: DashMap::new(),
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        }
    }

    pub fn counters(&self) -> (u64, u64) {
        (self.nodes.load(Ordering::Relaxed), self.hits.load(Ordering::Relaxed))
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// Sorts components by key and, in twin mode, removes equivalent pairs.
    fn normalize(&self, comps: Comps) -> (i64, Comps) {
        if !self.opts.twin_reduction {
            let mut comps = comps;
            comps.sort_by(|a, b| a.key.cmp(&b.key));
            return (0, comps);
        }
        let mut gain = 0;
        let mut out: Comps = Vec::with_capacity(comps.len());
        for c in comps {
            if c.twin_free {
                out.push(c);
            } else {
                let (g, parts) = reduce_twins(&c);
                gain += g;
                out.extend(parts.into_iter().map(Arc::new));
            }
        }
        out.sort_by(|a, b| a.key.cmp(&b.key));
        // isolated vertices with equal Left-claimed degree are equivalent too
        let mut kept: Comps = Vec::with_capacity(out.len());
        let mut i = 0;
        while i < out.len() {
            let c = &out[i];
            if c.k == 1 && i + 1 < out.len() && out[i + 1].key == c.key {
                gain += c.edges.len() as i64;
                i += 2;
            } else {
                kept.push(c.clone());
                i += 1;
            }
        }
        (gain, kept)
    }

    fn state_key(comps: &[Arc<Component>], mover: Player) -> Vec<u8> {
        let len = comps.iter().map(|c| c.key.len() + 2).sum::<usize>() + 1;
        let mut key = Vec::with_capacity(len);
        key.push(match mover {
            Player::Left => b'L',
            Player::Right => b'R',
        });
        for c in comps {
            key.extend_from_slice(&(c.key.len() as u16).to_le_bytes());
            key.extend_from_slice(&c.key);
        }
        key
    }

    /// Plays local vertex `v` of component `i`: score gained and the
    /// normalized resulting sum.
    fn child(&self, comps: &[Arc<Component>], i: usize, v: usize, who: Player) -> (i64, Comps) {
        let c = &comps[i];
        let mut edges = c.edges.clone();
        let mut gain = apply_move(&mut edges, v, who);
        let mut next: Comps = Vec::with_capacity(comps.len() + 1);
        next.extend(comps[..i].iter().cloned());
        next.extend(comps[i + 1..].iter().cloned());
        next.extend(split::<()>(RawGame { k: c.k, edges }, None).into_iter().map(|(p, _)| Arc::new(p)));
        let (g, next) = self.normalize(next);
        gain += g;
        (gain, next)
    }

    fn tick(&self) -> Result<(), SolveError> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.opts.max_nodes {
            Some(limit) if n > limit => Err(SolveError::NodeBudget { limit }),
            _ => Ok(()),
        }
    }

    /// Candidate moves `(component, local vertex)` at a node.
    fn moves(&self, comps: &[Arc<Component>]) -> Vec<(usize, usize)> {
        let mut moves = Vec::new();
        for (i, c) in comps.iter().enumerate() {
            if self.opts.symmetry {
                if i > 0 && comps[i - 1].key == c.key {
                    continue;
                }
                moves.extend(c.classes().iter().map(|cl| (i, cl[0])));
            } else {
                moves.extend((0..c.k).map(|v| (i, v)));
            }
        }
        if self.opts.domination {
            moves = self.undominated(comps, moves);
        }
        moves
    }

    /// Drops moves dominated by a kept move (graph residuals only).
    fn undominated(&self, comps: &[Arc<Component>], moves: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        let views: Vec<_> = comps.iter().map(|c| graph_view(c)).collect();
        let left = |(i, v): (usize, usize)| views[i].0[v];
        let mut order = moves;
        order.sort_by_key(|&m| std::cmp::Reverse(left(m)));
        let mut kept: Vec<(usize, usize)> = Vec::new();
        for u in order {
            let dominated = kept.iter().any(|&v| {
                let outside = if v.0 == u.0 {
                    let nv = &views[v.0].1[v.1];
                    views[u.0].1[u.1].iter().filter(|&&w| w != v.1 && !nv.contains(&w)).count()
                } else {
                    views[u.0].1[u.1].len()
                };
                left(v) >= left(u) + outside
            });
            if !dominated {
                kept.push(u);
            }
        }
        kept.sort_unstable();
        kept
    }

    /// Lemma-4 style bounds for a sum from the values of its summands.
    fn sum_bounds(&self, comps: &[Arc<Component>], mover: Player) -> Result<Bounds, SolveError> {
        let (mut sum_l, mut sum_r, mut best_gap) = (0, 0, i64::MIN);
        for c in comps {
            let one = [c.clone()];
            let l = self.search(&one, Player::Left, NEG, POS)?;
            let r = self.search(&one, Player::Right, NEG, POS)?;
            sum_l += l;
            sum_r += r;
            best_gap = best_gap.max(l - r);
        }
        Ok(match mover {
            Player::Left => Bounds {
                lo: sum_r + best_gap,
                hi: sum_l,
            },
            Player::Right => Bounds {
                lo: sum_r,
                hi: sum_l - best_gap,
            },
        })
    }

    /// Value of a normalized sum for `mover`, excluding already secured points.
    /// The result is exact when it lies strictly inside `(alpha, beta)`.
    pub fn search(&self, comps: &[Arc<Component>], mover: Player, mut alpha: i64, mut beta: i64) -> Result<i64, SolveError> {
        if comps.is_empty() {
            return Ok(0);
        }
        let pruning = self.opts.alpha_beta;
        let key = Self::state_key(comps, mover);
        if let Some(b) = self.table.get(&key).map(|e| *e) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            if b.lo == b.hi || b.lo >= beta {
                return Ok(b.lo);
            }
            if b.hi <= alpha {
                return Ok(b.hi);
            }
            alpha = alpha.max(b.lo);
            beta = beta.min(b.hi);
        }
        self.tick()?;
        if pruning && comps.len() >= 2 {
            let b = self.sum_bounds(comps, mover)?;
            if b.lo == b.hi {
                self.store(key, b);
                return Ok(b.lo);
            }
            if b.lo >= beta {
                return Ok(b.lo);
            }
            if b.hi <= alpha {
                return Ok(b.hi);
            }
            alpha = alpha.max(b.lo);
            beta = beta.min(b.hi);
        }
        let (a0, b0) = (alpha, beta);
        let opponent = mover.opponent();
        let mut best = match mover {
            Player::Left => NEG,
            Player::Right => POS,
        };
        for (i, v) in self.moves(comps) {
            let (gain, next) = self.child(comps, i, v, mover);
            let value = if pruning {
                gain + self.search(&next, opponent, alpha - gain, beta - gain)?
            } else {
                gain + self.search(&next, opponent, NEG, POS)?
            };
            match mover {
                Player::Left => {
                    best = best.max(value);
                    if pruning {
                        alpha = alpha.max(value);
                    }
                }
                Player::Right => {
                    best = best.min(value);
                    if pruning {
                        beta = beta.min(value);
                    }
                }
            }
            if pruning && alpha >= beta {
                break;
            }
        }
        let bounds = if !pruning || (best > a0 && best < b0) {
            Bounds { lo: best, hi: best }
        } else if best <= a0 {
            Bounds { lo: NEG, hi: best }
        } else {
            Bounds { lo: best, hi: POS }
        };
        self.store(key, bounds);
        Ok(best)
    }

    fn store(&self, key: Vec<u8>, b: Bounds) {
        if self.table.len() >= self.opts.table_capacity {
            self.table.clear();
        }
        self.table
            .entry(key)
            .and_modify(|e| {
                e.lo = e.lo.max(b.lo);
                e.hi = e.hi.min(b.hi);
            })
            .or_insert(b);
    }

    /// Value of `position` for `mover`.
    pub fn value(&self, position: &Position, mover: Player) -> Result<i64, SolveError> {
        let root = residual_of(position)?;
        let comps = root.components.into_iter().map(|(c, _)| c).collect();
        let (gain, comps) = self.normalize(comps);
        Ok(root.base + gain + self.search(&comps, mover, NEG, POS)?)
    }

    /// Value of `position` for `mover` and every optimal first move.
    pub fn solve_root(&self, position: &Position, mover: Player) -> Result<(i64, Vec<VertexId>), SolveError> {
        let root = residual_of(position)?;
        if position.is_terminal() {
            return Ok((root.base, Vec::new()));
        }
        let comps: Comps = root.components.iter().map(|(c, _)| c.clone()).collect();
        let origins: Vec<&Vec<VertexId>> = root.components.iter().map(|(_, o)| o).collect();

        let mut classes = Vec::new();
        if !root.idle.is_empty() {
            if self.opts.symmetry {
                classes.push(RootClass {
                    members: root.idle.clone(),
                    play: None,
                });
            } else {
                classes.extend(root.idle.iter().map(|&v| RootClass {
                    members: vec![v],
                    play: None,
                }));
            }
        }
        let mut i = 0;
        while i < comps.len() {
            let mut j = i + 1;
            if self.opts.symmetry {
                while j < comps.len() && comps[j].key == comps[i].key {
                    j += 1;
                }
                for class in comps[i].classes() {
                    let origins = &origins;
                    let members = (i..j).flat_map(|c| class.iter().map(move |&v| origins[c][v])).collect();
                    classes.push(RootClass {
                        members,
                        play: Some((i, class[0])),
                    });
                }
            } else {
                classes.extend((0..comps[i].k).map(|v| RootClass {
                    members: vec![origins[i][v]],
                    play: Some((i, v)),
                }));
            }
            i = j;
        }

        let evaluate = |class: &RootClass| -> Result<i64, SolveError> {
            let (gain, next) = match class.play {
                Some((i, v)) => self.child(&comps, i, v, mover),
                None => self.normalize(comps.clone()),
            };
            Ok(root.base + gain + self.search(&next, mover.opponent(), NEG, POS)?)
        };
        let values: Vec<i64> = if self.opts.workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.opts.workers)
                .build()
                .map_err(|e| SolveError::Workers(e.to_string()))?;
            pool.install(|| classes.par_iter().map(evaluate).collect::<Result<_, _>>())?
        } else {
            classes.iter().map(evaluate).collect::<Result<_, _>>()?
        };
        let best = match mover {
            Player::Left => *values.iter().max().expect("nonterminal position has moves"),
            Player::Right => *values.iter().min().expect("nonterminal position has moves"),
        };
        let mut moves: Vec<VertexId> = classes
            .iter()
            .zip(&values)
            .filter(|(_, &v)| v == best)
            .flat_map(|(c, _)| c.members.iter().copied())
            .collect();
        moves.sort_unstable();
        Ok((best, moves))
    }
}
