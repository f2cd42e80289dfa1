//! Small graphs up to isomorphism, for exhaustive checks.

use std::collections::HashSet;

/// Largest order supported by [`graphs`].
pub const MAX_ORDER: usize = 9;

type Adj = Vec<u16>;

fn edges_of(adj: &Adj) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &row) in adj.iter().enumerate() {
        for j in i + 1..adj.len() {
            if row & (1 << j) != 0 {
                out.push((i, j));
            }
        }
    }
    out
}

fn code(adj: &Adj, order: &[usize]) -> u64 {
    let mut c = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            c <<= 1;
            if adj[order[i]] & (1 << order[j]) != 0 {
                c |= 1;
            }
        }
    }
    c
}

/// Canonical code: the largest code over the orderings that respect a
/// degree-based vertex invariant.
fn canonical(adj: &Adj) -> u64 {
    let n = adj.len();
    let degree: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
    let invariant: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&u| adj[v] & (1 << u) != 0).map(|u| degree[u]).collect();
            nd.sort_unstable();
            (degree[v], nd)
        })
        .collect();
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.sort_by(|&a, &b| invariant[a].cmp(&invariant[b]));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in vertices {
        match blocks.last_mut() {
            Some(b) if invariant[b[0]] == invariant[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best = 0;
    let mut order = Vec::with_capacity(n);
    search(adj, &blocks, 0, &mut vec![false; n], &mut order, &mut best);
    best
}

fn search(adj: &Adj, blocks: &[Vec<usize>], b: usize, used: &mut Vec<bool>, order: &mut Vec<usize>, best: &mut u64) {
    if b == blocks.len() {
        *best = (*best).max(code(adj, order));
        return;
    }
    let block = &blocks[b];
    let placed = order.len() - blocks[..b].iter().map(Vec::len).sum::<usize>();
    if placed == block.len() {
        search(adj, blocks, b + 1, used, order, best);
        return;
    }
    for &v in block {
        if !used[v] {
            used[v] = true;
            order.push(v);
            search(adj, blocks, b, used, order, best);
            order.pop();
            used[v] = false;
        }
    }
}

/// All graphs on `n` vertices up to isomorphism, as edge lists.
pub fn graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n <= MAX_ORDER, "graph enumeration supports at most {MAX_ORDER} vertices");
    let mut layer: Vec<Adj> = vec![Vec::new()];
    for k in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &layer {
            for nbrs in 0u16..(1 << k) {
                let mut h = g.clone();
                for (u, row) in h.iter_mut().enumerate() {
                    if nbrs & (1 << u) != 0 {
                        *row |= 1 << k;
                    }
                }
                h.push(nbrs);
                if seen.insert(canonical(&h)) {
                    next.push(h);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(edges_of).collect()
}

/// Graphs of every order `0..=n`, paired with their order.
pub fn graphs_up_to(n: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    (0..=n).flat_map(|k| graphs(k).into_iter().map(move |g| (k, g))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| graphs(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 11, 34, 156]);
    }
}
