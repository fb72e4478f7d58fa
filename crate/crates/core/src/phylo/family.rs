//! Graphs whose phylogeny and competition numbers differ by a prescribed amount.

use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph};

use super::competition::competition_number_with_cap;
use super::reduce::decompose_equal;
use super::solver::ENGINE_MAX_VERTICES;
use super::PhyloResult;

/// Largest supported family index.
pub const FAMILY_CAP: usize = 4;

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub l: usize,
    pub graph: Graph,
    pub p: PhyloResult,
    pub k: usize,
    /// p - k + 1 == l
    pub identity_holds: bool,
}

/// G_0 = K2; for l ≥ 1, a 2 × (l+1) grid with K_{l+2} glued at vertex 2.
///
/// Grid cell (column x, row y) gets id 2y + x for x < 2 and 2x + y after,
/// so that G_1 and G_2 match the catalog's numbering. The clique's other
/// vertices follow the grid.
pub fn family_graph(l: usize) -> Result<Graph> {
    if l > FAMILY_CAP {
        return Err(Error::CapExceeded { l, cap: FAMILY_CAP });
    }
    if l == 0 {
        return Graph::from_edges(2, &[(0, 1)]);
    }
    let id = |x: usize, y: usize| if x < 2 { 2 * y + x } else { 2 * x + y };
    let mut edges = Vec::new();
    for x in 0..=l {
        edges.push((id(x, 0), id(x, 1)));
        if x < l {
            edges.push((id(x, 0), id(x + 1, 0)));
            edges.push((id(x, 1), id(x + 1, 1)));
        }
    }
    let grid = 2 * (l + 1);
    let clique: Vec<_> = std::iter::once(2).chain(grid..grid + l + 1).collect();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            edges.push((u, v));
        }
    }
    Graph::from_edges(grid + l + 1, &edges)
}

/// The grid and clique parts of G_l (l ≥ 1).
pub fn family_parts(l: usize) -> Result<Vec<Subgraph>> {
    let g = family_graph(l)?;
    let grid = 2 * (l + 1);
    let clique = Subgraph::induced(&g, std::iter::once(2).chain(grid..grid + l + 1));
    let grid = Subgraph::induced(&g, 0..grid);
    Ok(vec![clique, grid])
}

/// Builds G_l, gets p from the exact decomposition into clique and grid,
/// k by exact search, and checks p - k + 1 = l.
pub fn difference_family(l: usize) -> Result<FamilyReport> {
    let graph = family_graph(l)?;
    let p = if l == 0 {
        PhyloResult::exact(0, "complete graph")
    } else {
        decompose_equal(&graph, &family_parts(l)?)?
    };
    let k = competition_number_with_cap(&graph, ENGINE_MAX_VERTICES)?;
    let value = p.value().expect("decomposition is exact");
    let identity_holds = value + 1 == k + l;
    Ok(FamilyReport {
        l,
        graph,
        p,
        k,
        identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::catalog::figure;

    #[test]
    fn matches_catalog() {
        assert_eq!(family_graph(1).unwrap(), figure("fig4_G1").unwrap().into_graph().unwrap());
        assert_eq!(family_graph(2).unwrap(), figure("fig4_G2").unwrap().into_graph().unwrap());
    }

    #[test]
    fn sizes_and_cap() {
        let g = family_graph(4).unwrap();
        assert_eq!(g.n(), 15);
        assert_eq!(g.m(), 13 + 15);
        assert_eq!(family_graph(5), Err(Error::CapExceeded { l: 5, cap: 4 }));
    }

    #[test]
    fn first_members() {
        for l in 0..=2 {
            let r = difference_family(l).unwrap();
            assert_eq!(r.p.value(), Some(l));
            assert!(r.identity_holds, "l = {l}");
        }
    }
}
