//! Residual games: what is left of a position once claimed vertices are
//! folded into the hyperedges.
//!
//! A hyperedge that can still be completed by someone is kept as its free
//! part together with an effective color: blue if only Left can still
//! complete it, red if only Right can, green if both can. Dead hyperedges
//! are dropped and completed ones move into a constant. The residual splits
//! into connected components over free vertices; components are relabelled
//! into a canonical order and keyed by their encoding.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::board::{EdgeColor, Owner, Player, Position, VertexId};

use super::twins::twin_pairs;
use super::SolveError;

pub(crate) type Mask = u128;

/// Largest number of free vertices one component may hold.
pub(crate) const MAX_COMPONENT: usize = Mask::BITS as usize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct REdge {
    pub color: EdgeColor,
    pub mask: Mask,
}

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1 << v
}

/// A canonically labelled connected residual game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Component {
    pub k: usize,
    pub edges: Vec<REdge>,
    pub key: Vec<u8>,
    /// No equivalent pair remains (only meaningful in twin mode).
    pub twin_free: bool,
    classes: OnceLock<Vec<Vec<usize>>>,
}

impl Component {
    pub fn new(k: usize, edges: Vec<REdge>, key: Vec<u8>) -> Self {
        Component {
            k,
            edges,
            key,
            twin_free: false,
            classes: OnceLock::new(),
        }
    }

    /// Interchangeable vertex groups, computed once.
    pub fn classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| symmetry_classes(self))
    }
}

/// A component before canonical relabelling.
pub(crate) struct RawGame {
    pub k: usize,
    pub edges: Vec<REdge>,
}

/// Effect of `who` claiming local vertex `v`: returns the score gained.
/// Edges keep their labels; `v` no longer appears in any edge afterwards.
pub(crate) fn apply_move(edges: &mut Vec<REdge>, v: usize, who: Player) -> i64 {
    let b = bit(v);
    let mut gain = 0;
    edges.retain_mut(|e| {
        if e.mask & b == 0 {
            return true;
        }
        let own = match who {
            Player::Left => EdgeColor::Blue,
            Player::Right => EdgeColor::Red,
        };
        if e.color != own && e.color != EdgeColor::Green {
            return false;
        }
        e.mask &= !b;
        if e.mask == 0 {
            gain += match who {
                Player::Left => 1,
                Player::Right => -1,
            };
            false
        } else {
            e.color = own;
            true
        }
    });
    gain
}

/// Splits a raw game into canonical components, dropping free vertices that
/// lie in no live hyperedge. `origin` maps local labels to anything the
/// caller wants to track through relabelling.
pub(crate) fn split<T: Copy>(raw: RawGame, origin: Option<&[T]>) -> Vec<(Component, Option<Vec<T>>)> {
    let RawGame { k, edges } = raw;
    if edges.is_empty() {
        return Vec::new();
    }
    let mut adjacency = vec![0 as Mask; k];
    for e in &edges {
        let mut m = e.mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            adjacency[v] |= e.mask;
            m &= m - 1;
        }
    }
    let mut touched: Mask = edges.iter().fold(0, |acc, e| acc | e.mask);
    let mut parts = Vec::new();
    while touched != 0 {
        let start = touched.trailing_zeros() as usize;
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adjacency[v] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        touched &= !comp;
        parts.push(comp);
    }
    if parts.len() == 1 && parts[0].count_ones() as usize == k {
        let order = canonical_order(k, &edges);
        return vec![relabel(k, &edges, &order, origin)];
    }
    parts
        .into_iter()
        .map(|comp| {
            let members: Vec<usize> = (0..k).filter(|&v| comp & bit(v) != 0).collect();
            let mut local = vec![usize::MAX; k];
            for (i, &v) in members.iter().enumerate() {
                local[v] = i;
            }
            let sub: Vec<REdge> = edges
                .iter()
                .filter(|e| e.mask & comp != 0)
                .map(|e| REdge {
                    color: e.color,
                    mask: remap(e.mask, &local),
                })
                .collect();
            let sub_origin: Option<Vec<T>> = origin.map(|o| members.iter().map(|&v| o[v]).collect());
            let order = canonical_order(members.len(), &sub);
            relabel(members.len(), &sub, &order, sub_origin.as_deref())
        })
        .collect()
}

fn remap(mut mask: Mask, local: &[usize]) -> Mask {
    let mut out = 0;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        out |= bit(local[v]);
    }
    out
}

fn relabel<T: Copy>(k: usize, edges: &[REdge], order: &[usize], origin: Option<&[T]>) -> (Component, Option<Vec<T>>) {
    let mut position = vec![0; k];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut relabelled: Vec<REdge> = edges
        .iter()
        .map(|e| REdge {
            color: e.color,
            mask: remap(e.mask, &position),
        })
        .collect();
    relabelled.sort_unstable();
    let key = encode(k, &relabelled);
    let origin = origin.map(|o| order.iter().map(|&old| o[old]).collect());
    (
        Component::new(k, relabelled, key),
        origin,
    )
}

fn encode(k: usize, sorted_edges: &[REdge]) -> Vec<u8> {
    let width = k.div_ceil(8);
    let mut key = Vec::with_capacity(1 + sorted_edges.len() * (1 + width));
    key.push(k as u8);
    for e in sorted_edges {
        key.push(e.color.letter() as u8);
        key.extend_from_slice(&e.mask.to_le_bytes()[..width]);
    }
    key
}

/// A labelling order: along the path for path-shaped components (the
/// orientation with the smaller encoding), otherwise a colour-refinement
/// order with ties broken by the current label.
fn canonical_order(k: usize, edges: &[REdge]) -> Vec<usize> {
    if let Some(path) = path_order(k, edges) {
        let reversed: Vec<usize> = path.iter().rev().copied().collect();
        let key_of = |order: &[usize]| {
            let mut position = vec![0; k];
            for (new, &old) in order.iter().enumerate() {
                position[old] = new;
            }
            let mut es: Vec<REdge> = edges
                .iter()
                .map(|e| REdge {
                    color: e.color,
                    mask: remap(e.mask, &position),
                })
                .collect();
            es.sort_unstable();
            encode(k, &es)
        };
        return if key_of(&reversed) < key_of(&path) { reversed } else { path };
    }
    refinement_order(k, edges)
}

fn path_order(k: usize, edges: &[REdge]) -> Option<Vec<usize>> {
    if k == 1 {
        return Some(vec![0]);
    }
    let mut next = vec![Vec::with_capacity(2); k];
    let mut pair_edges = 0;
    let mut color = None;
    for e in edges {
        match e.mask.count_ones() {
            1 => {}
            2 => {
                if *color.get_or_insert(e.color) != e.color {
                    return None;
                }
                let a = e.mask.trailing_zeros() as usize;
                let b = (Mask::BITS - 1 - e.mask.leading_zeros()) as usize;
                if next[a].len() == 2 || next[b].len() == 2 || next[a].contains(&b) {
                    return None;
                }
                next[a].push(b);
                next[b].push(a);
                pair_edges += 1;
            }
            _ => return None,
        }
    }
    // connected with k-1 edges and degree <= 2
    if pair_edges != k - 1 {
        return None;
    }
    let start = (0..k).find(|&v| next[v].len() == 1)?;
    let mut order = Vec::with_capacity(k);
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        order.push(cur);
        match next[cur].iter().find(|&&x| x != prev) {
            Some(&nx) => {
                prev = cur;
                cur = nx;
            }
            None => break,
        }
    }
    (order.len() == k).then_some(order)
}

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Colour refinement with hashed signatures. A collision only makes the
/// order less canonical; keys stay exact.
fn refinement_order(k: usize, edges: &[REdge]) -> Vec<usize> {
    let mut colour: Vec<u64> = vec![0; k];
    let mut classes = 1;
    let mut signature = vec![0u64; k];
    for _round in 0..4 {
        signature.iter_mut().zip(&colour).for_each(|(s, &c)| *s = mix(c));
        for e in edges {
            let size = e.mask.count_ones() as u64;
            let tag = mix(((e.color.letter() as u64) << 8) | size);
            let total = bits(e.mask).fold(0u64, |acc, u| acc.wrapping_add(mix(colour[u] ^ tag)));
            for v in bits(e.mask) {
                let others = total.wrapping_sub(mix(colour[v] ^ tag));
                signature[v] = signature[v].wrapping_add(mix(others ^ tag.rotate_left(17)));
            }
        }
        let mut distinct = signature.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let count = distinct.len();
        for (c, s) in colour.iter_mut().zip(&signature) {
            *c = distinct.binary_search(s).unwrap_or(0) as u64;
        }
        if count == classes || count == k {
            break;
        }
        classes = count;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| (colour[v], v));
    order
}

pub(crate) fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// The residual of a position: secured score, its components with the
/// original vertex of every local label, and the free vertices that lie in
/// no live hyperedge.
pub(crate) struct RootResidual {
    pub base: i64,
    pub components: Vec<(Arc<Component>, Vec<VertexId>)>,
    pub idle: Vec<VertexId>,
}

pub(crate) fn residual_of(position: &Position) -> Result<RootResidual, SolveError> {
    let board = position.board();
    let owners = position.owners();
    let free: Vec<VertexId> = position.free_vertices();
    let mut local = vec![usize::MAX; owners.len()];
    for (i, v) in free.iter().enumerate() {
        local[v.index()] = i;
    }
    let mut base: i64 = 0;
    let mut live: Vec<(EdgeColor, Vec<usize>)> = Vec::new();
    for e in board.edges() {
        let (mut l, mut r) = (false, false);
        let mut members = Vec::new();
        for v in &e.vertices {
            match owners[v.index()] {
                Owner::Free => members.push(local[v.index()]),
                Owner::Claimed(Player::Left) => l = true,
                Owner::Claimed(Player::Right) => r = true,
            }
        }
        let color = match (e.color, l, r) {
            (EdgeColor::Blue, _, true) | (EdgeColor::Red, true, _) | (EdgeColor::Green, true, true) => continue,
            (EdgeColor::Green, true, false) => EdgeColor::Blue,
            (EdgeColor::Green, false, true) => EdgeColor::Red,
            (c, _, _) => c,
        };
        if members.is_empty() {
            base += match color {
                EdgeColor::Blue => 1,
                EdgeColor::Red => -1,
                EdgeColor::Green => unreachable!("green edge with no claimed and no free vertex"),
            };
        } else {
            live.push((color, members));
        }
    }

    // union-find over free vertices
    let mut parent: Vec<usize> = (0..free.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; free.len()];
    for (_, members) in &live {
        for &m in members {
            touched[m] = true;
        }
        for w in members.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for (v, &t) in touched.iter().enumerate() {
        if t {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
    }
    let mut group_list: Vec<Vec<usize>> = groups.into_values().collect();
    group_list.sort_by_key(|g| g[0]);
    let mut group_of = vec![(usize::MAX, usize::MAX); free.len()];
    for (gi, g) in group_list.iter().enumerate() {
        if g.len() > MAX_COMPONENT {
            return Err(SolveError::ComponentTooLarge {
                size: g.len(),
                limit: MAX_COMPONENT,
            });
        }
        for (li, &v) in g.iter().enumerate() {
            group_of[v] = (gi, li);
        }
    }
    let mut raw_edges: Vec<Vec<REdge>> = vec![Vec::new(); group_list.len()];
    for (color, members) in live {
        let gi = group_of[members[0]].0;
        let mask = members.iter().fold(0, |acc, &m| acc | bit(group_of[m].1));
        raw_edges[gi].push(REdge { color, mask });
    }
    let mut components = Vec::new();
    for (g, edges) in group_list.iter().zip(raw_edges) {
        let origin: Vec<VertexId> = g.iter().map(|&v| free[v]).collect();
        for (c, o) in split(RawGame { k: g.len(), edges }, Some(&origin)) {
            components.push((Arc::new(c), o.expect("origin tracked")));
        }
    }
    let idle = free.iter().enumerate().filter(|(i, _)| !touched[*i]).map(|(_, &v)| v).collect();
    Ok(RootResidual { base, components, idle })
}

/// In a Maker-Breaker graph residual every edge is blue with one or two free
/// vertices: singletons count Left-claimed neighbours.
pub(crate) fn graph_view(c: &Component) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut left_degree = vec![0; c.k];
    let mut adj = vec![Vec::new(); c.k];
    for e in &c.edges {
        let mut it = bits(e.mask);
        let a = it.next().expect("nonempty edge");
        match it.next() {
            None => left_degree[a] += 1,
            Some(b) => {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    (left_degree, adj)
}

/// Repeatedly hands one vertex of every equivalent pair to each player.
/// Returns the score secured by doing so and the resulting twin-free components.
pub(crate) fn reduce_twins(c: &Component) -> (i64, Vec<Component>) {
    let mut gain = 0;
    let mut pending = vec![c.clone()];
    let mut done = Vec::new();
    while let Some(comp) = pending.pop() {
        let (left_degree, adj) = graph_view(&comp);
        let pairs = twin_pairs(&left_degree, &adj, &vec![true; comp.k]);
        if pairs.is_empty() {
            let mut comp = comp;
            comp.twin_free = true;
            done.push(comp);
            continue;
        }
        let mut edges = comp.edges.clone();
        for (a, b) in pairs {
            gain += apply_move(&mut edges, a, Player::Left);
            gain += apply_move(&mut edges, b, Player::Right);
        }
        for (part, _) in split::<()>(RawGame { k: comp.k, edges }, None) {
            pending.push(part);
        }
    }
    (gain, done)
}

/// Groups of pairwise interchangeable vertices: swapping two members is an
/// automorphism of the component. Each group is listed in increasing order.
pub(crate) fn symmetry_classes(c: &Component) -> Vec<Vec<usize>> {
    let k = c.k;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, e) in c.edges.iter().enumerate() {
        for v in bits(e.mask) {
            incident[v].push(i);
        }
    }
    let profile = |v: usize| -> Vec<(EdgeColor, u32)> {
        let mut p: Vec<_> = incident[v].iter().map(|&i| (c.edges[i].color, c.edges[i].mask.count_ones())).collect();
        p.sort_unstable();
        p
    };
    let profiles: Vec<_> = (0..k).map(profile).collect();
    let swappable = |u: usize, v: usize| -> bool {
        let (bu, bv) = (bit(u), bit(v));
        let mut a: Vec<REdge> = incident[u]
            .iter()
            .map(|&i| c.edges[i])
            .filter(|e| e.mask & bv == 0)
            .map(|e| REdge {
                color: e.color,
                mask: e.mask ^ bu ^ bv,
            })
            .collect();
        let mut b: Vec<REdge> = incident[v].iter().map(|&i| c.edges[i]).filter(|e| e.mask & bu == 0).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for v in 0..k {
        for class in classes.iter_mut() {
            let rep = class[0];
            if profiles[rep] == profiles[v] && swappable(rep, v) {
                class.push(v);
                continue 'outer;
            }
        }
        classes.push(vec![v]);
    }
    classes
}
