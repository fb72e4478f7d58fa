//! Competition numbers.

use crate::error::Result;
use crate::graph::{Digraph, Graph};
use crate::structure::census;

use super::solver::{solve_competition, SolverConfig, ENGINE_MAX_VERTICES};

/// Exact k(G). Connected triangle-free graphs on two or more vertices use
/// the closed form |E| - |V| + 2; everything else goes to the exact search.
pub fn competition_number_exact(g: &Graph) -> Result<usize> {
    competition_number_with_cap(g, crate::structure::DEFAULT_SIZE_CAP)
}

pub fn competition_number_with_cap(g: &Graph, size_cap: usize) -> Result<usize> {
    if g.n() >= 2 && g.is_connected() && census(g).t == 0 {
        return Ok(g.m() + 2 - g.n());
    }
    Ok(competition_number_with_witness(g, size_cap)?.0)
}

/// k(G) by exact search, with an acyclic digraph on `n + k` vertices whose
/// competition graph is G plus k isolated vertices.
pub fn competition_number_with_witness(g: &Graph, size_cap: usize) -> Result<(usize, Digraph)> {
    let cfg = SolverConfig {
        size_cap: size_cap.min(ENGINE_MAX_VERTICES),
        max_extras: None,
    };
    let isolated = (0..g.n()).any(|v| g.degree(v) == 0);
    // the vertex last in an acyclic order has no out-neighbor, so without
    // isolated vertices its edges need an added vertex
    let start = usize::from(g.m() > 0 && !isolated);
    solve_competition(g, &cfg, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::competition_graph;

    fn check(g: &Graph, expected: usize) {
        let (k, d) = competition_number_with_witness(g, 12).unwrap();
        assert_eq!(k, expected);
        assert!(d.is_acyclic());
        let c = competition_graph(&d);
        assert_eq!(c.induced_subgraph(&(0..g.n()).collect::<Vec<_>>()).0, *g);
        assert!((g.n()..d.n()).all(|x| c.degree(x) == 0));
    }

    #[test]
    fn small() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        check(&k3, 1);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        check(&c4, 2);
        assert_eq!(competition_number_exact(&c4).unwrap(), 2);
        check(&Graph::empty(3), 0);
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        check(&k2, 1);
    }
}
