//! Restricting a phylogeny digraph to a well-behaved subgraph.

use std::collections::BTreeSet;

use crate::derived::{validate_phylogeny_digraph, validate_positional, PhyloCertificate};
use crate::error::Result;
use crate::graph::{Digraph, Graph, Subgraph, VertexId};
use crate::phylo::verify_parts;

/// Given a phylogeny digraph `d` for `g` (graph vertex `i` is `base[i]`) and a
/// subgraph `h` whose maximal cliques are maximal in `g` and meet the other
/// maximal cliques of `g` in at most one vertex, builds a phylogeny digraph
/// for `h`: keep the extras of `d`, and for each vertex `x` of `h` or extra
/// whose closed in-neighborhood within `h` is a clique of `h` with two or
/// more vertices, keep the arcs from that set into `x`.
///
/// The result is positional for `h.to_graph()`: its vertices are `h`'s
/// vertices in ascending order followed by the extras of `d` in ascending order.
pub fn restriction_digraph(d: &Digraph, base: &[VertexId], g: &Graph, h: &Subgraph) -> Result<PhyloCertificate> {
    validate_phylogeny_digraph(d, base, g)?;
    verify_parts(g, std::slice::from_ref(h))?;

    let (h_graph, h_map) = h.to_graph();
    let in_base: BTreeSet<_> = base.iter().copied().collect();
    let extras: Vec<_> = (0..d.n()).filter(|v| !in_base.contains(v)).collect();
    // digraph vertex -> restricted vertex
    let mut index = vec![usize::MAX; d.n()];
    for (i, &v) in h_map.iter().enumerate() {
        index[base[v]] = i;
    }
    for (j, &x) in extras.iter().enumerate() {
        index[x] = h_map.len() + j;
    }
    let in_h = |v: VertexId| index[v] != usize::MAX && index[v] < h_map.len();

    let mut arcs = Vec::new();
    for x in (0..d.n()).filter(|&x| index[x] != usize::MAX) {
        let mut closed: Vec<VertexId> = d.in_neighbors(x).iter().copied().filter(|&v| in_h(v)).collect();
        if in_h(x) {
            closed.push(x);
        }
        let local: Vec<VertexId> = closed.iter().map(|&v| index[v]).collect();
        if local.len() >= 2 && h_graph.is_clique(&local) {
            arcs.extend(closed.iter().filter(|&&v| v != x).map(|&v| (index[v], index[x])));
        }
    }
    arcs.sort_unstable();
    let restricted = Digraph::from_arcs(h_map.len() + extras.len(), &arcs)?;
    let cert = validate_positional(&restricted, &h_graph)
        .expect("restricted digraph contains the subgraph as an induced subgraph");
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::phylogeny_graph;
    use crate::witness::catalog::{figure, CatalogEntry};

    #[test]
    fn figure_one_square() {
        let g = figure("fig1_G").unwrap().into_graph().unwrap();
        let CatalogEntry::Digraph { digraph, base } = figure("fig1_D").unwrap() else {
            panic!("fig1_D is a digraph");
        };
        let h = Subgraph::induced(&g, [0, 1, 2, 3]);
        let cert = restriction_digraph(&digraph, &base, &g, &h).unwrap();
        assert_eq!(cert.digraph.n(), 5);
        let p = phylogeny_graph(&cert.digraph).unwrap();
        assert_eq!(p.induced_subgraph(&[0, 1, 2, 3]).0, h.to_graph().0);
    }

    #[test]
    fn whole_graph() {
        let g = figure("fig1_G").unwrap().into_graph().unwrap();
        let CatalogEntry::Digraph { digraph, base } = figure("fig1_D").unwrap() else {
            panic!("fig1_D is a digraph");
        };
        let cert = restriction_digraph(&digraph, &base, &g, &Subgraph::whole(&g)).unwrap();
        assert_eq!(cert.extra_count, 1);
    }

    #[test]
    fn bad_subgraph_rejected() {
        let g = figure("fig1_G").unwrap().into_graph().unwrap();
        let CatalogEntry::Digraph { digraph, base } = figure("fig1_D").unwrap() else {
            panic!("fig1_D is a digraph");
        };
        // one edge of the triangle is not a maximal clique
        let h = Subgraph::from_edges([(2, 4)]);
        assert!(restriction_digraph(&digraph, &base, &g, &h).is_err());
    }
}
