//! Brute-force phylogeny number for cross-checking the solver.
//!
//! Every acyclic digraph has a linear order in which each arc points to an
//! earlier vertex. For every ordering of the graph's vertices, each vertex
//! tries every in-neighborhood drawn from the later vertices such that the
//! closed in-neighborhood is a clique; each extra vertex (a sink) tries
//! every clique or the empty set. Acyclicity holds by construction. The
//! edges of P(D) inside the base are exactly those lying in some closed
//! in-neighborhood, so only the union of those edge sets matters and
//! equal unions are merged.

use std::collections::HashSet;

use crate::bitset::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ORACLE_MAX_VERTICES: usize = 7;
pub const ORACLE_MAX_EXTRAS: usize = 3;

/// Minimum r ≤ `r_max` admitting a phylogeny digraph, or
/// [`Error::Infeasible`] when none does.
pub fn oracle_phylogeny_number(g: &Graph, r_max: usize) -> Result<usize> {
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            cap: ORACLE_MAX_VERTICES,
        });
    }
    if r_max > ORACLE_MAX_EXTRAS {
        return Err(Error::TooLarge {
            n: r_max,
            cap: ORACLE_MAX_EXTRAS,
        });
    }
    let adj = g.adjacency_masks()?;
    let edges = g.edge_list();
    let full: u32 = if edges.is_empty() { 0 } else { (1u32 << edges.len()) - 1 };
    let coverage = |set: u64| -> u32 {
        edges
            .iter()
            .enumerate()
            .filter(|&(_, &(u, v))| set >> u & 1 == 1 && set >> v & 1 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    };
    let is_clique = |set: u64| bits(set).all(|u| (adj[u] | 1 << u) & set == set);

    // Cliques of G with at least two vertices: the useful extra in-neighborhoods.
    let cliques: Vec<u32> = (1u64..1 << n)
        .filter(|&s| s.count_ones() >= 2 && is_clique(s))
        .map(coverage)
        .collect();

    let mut base_masks: HashSet<u32> = HashSet::new();
    let mut order: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut order, 0, &mut |order| {
        let mut reachable: HashSet<u32> = HashSet::from([0]);
        for (i, &v) in order.iter().enumerate() {
            let later = order[i + 1..].iter().fold(0u64, |acc, &w| acc | 1 << w) & adj[v];
            let options: Vec<u32> = subsets(later)
                .filter(|&s| is_clique(s | 1 << v))
                .map(|s| coverage(s | 1 << v))
                .collect();
            reachable = reachable
                .iter()
                .flat_map(|&m| options.iter().map(move |&o| m | o))
                .collect();
        }
        base_masks.extend(reachable);
    });

    let mut current = base_masks;
    for r in 0..=r_max {
        if current.contains(&full) {
            return Ok(r);
        }
        current = current
            .iter()
            .flat_map(|&m| cliques.iter().map(move |&c| m | c))
            .collect();
    }
    Err(Error::Infeasible(r_max))
}

fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == mask { None } else { Some((s.wrapping_sub(mask)) & mask) };
        Some(s)
    })
}

fn for_each_permutation(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}
