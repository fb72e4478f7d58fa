//! Canonical labeling and exhaustive generation of small connected graphs.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::graph6::to_graph6;

/// Largest order for canonical codes (pairs must fit in a u128).
pub const CANONICAL_MAX_VERTICES: usize = 16;

/// Largest order the generator will produce.
pub const GENERATE_MAX_VERTICES: usize = 9;

/// Ordered partition refinement: split every cell by the number of
/// neighbors in each cell until stable. Cell order depends only on invariants.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut cell_of = vec![0; g.n()];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0; cells.len()];
                    for &w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn code_of(g: &Graph, order: &[usize]) -> u128 {
    let n = order.len();
    let mut code = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u128::from(g.has_edge(order[i], order[j]));
        }
    }
    code
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(u128, Vec<usize>)>) {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_of(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    for &v in &cells[target] {
        let mut split = cells.clone();
        let rest: Vec<usize> = split[target].iter().copied().filter(|&w| w != v).collect();
        split[target] = vec![v];
        split.insert(target + 1, rest);
        search(g, split, best);
    }
}

/// Canonical relabeling: `order[i]` is the vertex placed at position `i`.
/// Isomorphic graphs get identical relabeled graphs.
pub fn canonical_order(g: &Graph) -> Result<Vec<usize>> {
    if g.n() > CANONICAL_MAX_VERTICES {
        return Err(Error::TooLarge {
            n: g.n(),
            cap: CANONICAL_MAX_VERTICES,
        });
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let mut best = None;
    search(g, vec![(0..g.n()).collect()], &mut best);
    Ok(best.expect("search reaches a discrete partition").1)
}

pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let order = canonical_order(g)?;
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<_> = g.edges().map(|(u, v)| (pos[u], pos[v])).collect();
    Graph::from_edges(g.n(), &edges)
}

/// graph6 string of the canonical form: equal iff the graphs are isomorphic.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    Ok(to_graph6(&canonical_form(g)?))
}

/// All connected graphs on exactly `n` vertices up to isomorphism, sorted
/// by canonical graph6 string. Each graph on n vertices arises from one on
/// n - 1 vertices by adding a vertex with a nonempty neighborhood (delete a
/// non-cut vertex to see this), so extending every smaller graph in every
/// way and merging isomorphic results is exhaustive.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > GENERATE_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            cap: GENERATE_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let prev = k - 1;
        let found: HashSet<String> = level
            .par_iter()
            .flat_map_iter(|g| {
                (1u32..1 << prev).map(move |mask| {
                    let mut edges = g.edge_list();
                    edges.extend((0..prev).filter(|&v| mask >> v & 1 == 1).map(|v| (v, prev)));
                    let h = Graph::from_edges(k, &edges).expect("extension is simple");
                    canonical_graph6(&h).expect("within the canonical cap")
                })
            })
            .collect();
        let mut codes: Vec<_> = found.into_iter().collect();
        codes.sort();
        level = codes
            .iter()
            .map(|c| crate::io::graph6::from_graph6(c).expect("own encoding"))
            .collect();
    }
    Ok(level)
}

/// Connected graphs on 1..=n_max vertices, smallest order first.
pub fn connected_graphs_up_to(n_max: usize) -> Result<Vec<Graph>> {
    let mut all = Vec::new();
    for n in 1..=n_max {
        all.extend(connected_graphs(n)?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let counts: Vec<_> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn isomorphic_graphs_agree() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_graph6(&a).unwrap(), canonical_graph6(&b).unwrap());
        assert_ne!(canonical_graph6(&a).unwrap(), canonical_graph6(&star).unwrap());
    }
}
