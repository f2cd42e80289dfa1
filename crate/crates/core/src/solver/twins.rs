//! Equivalent-vertex detection for Maker-Breaker graph positions.
//!
//! Two free vertices `a`, `b` are equivalent when they have the same number of
//! Left-claimed neighbours and `N(a) ∩ F \ {b} = N(b) ∩ F \ {a}`. For
//! non-adjacent vertices the second condition means equal open free
//! neighbourhoods, for adjacent ones equal closed free neighbourhoods.

use std::collections::BTreeMap;

/// One round of disjoint equivalent pairs. `left_degree[v]` is the number of
/// Left-claimed neighbours of free vertex `v`; `free_adj[v]` its free neighbours
/// (sorted, with multiplicity). Within every class the members are paired in
/// index order, so the result is deterministic. Applying all returned pairs
/// at once is sound: pairs of different classes stay equivalent after the
/// others are assigned.
pub(crate) fn twin_pairs(left_degree: &[usize], free_adj: &[Vec<usize>], active: &[bool]) -> Vec<(usize, usize)> {
    let mut classes: BTreeMap<(usize, bool, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in 0..left_degree.len() {
        if !active[v] {
            continue;
        }
        let open = free_adj[v].clone();
        let mut closed = open.clone();
        let at = closed.partition_point(|&x| x < v);
        closed.insert(at, v);
        classes.entry((left_degree[v], false, open)).or_default().push(v);
        classes.entry((left_degree[v], true, closed)).or_default().push(v);
    }
    let mut used = vec![false; left_degree.len()];
    let mut groups: Vec<Vec<usize>> = classes.into_values().filter(|g| g.len() >= 2).collect();
    groups.sort_by_key(|g| g[0]);
    let mut pairs = Vec::new();
    for group in groups {
        let members: Vec<usize> = group.into_iter().filter(|&v| !used[v]).collect();
        for chunk in members.chunks_exact(2) {
            used[chunk[0]] = true;
            used[chunk[1]] = true;
            pairs.push((chunk[0], chunk[1]));
        }
    }
    pairs.sort_unstable();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaves_of_a_star_pair_off() {
        // center 0 with leaves 1..=4
        let adj = vec![vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]];
        let pairs = twin_pairs(&[0; 5], &adj, &[true; 5]);
        assert_eq!(pairs, vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn adjacent_twins_use_closed_neighbourhoods() {
        // triangle: all three pairwise equivalent, one pair per round
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert_eq!(twin_pairs(&[0; 3], &adj, &[true; 3]), vec![(0, 1)]);
    }

    #[test]
    fn left_degree_must_match() {
        let adj = vec![vec![], vec![]];
        assert!(twin_pairs(&[1, 2], &adj, &[true; 2]).is_empty());
        assert_eq!(twin_pairs(&[2, 2], &adj, &[true; 2]), vec![(0, 1)]);
    }
}
