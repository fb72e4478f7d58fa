//! Graphviz output.

use std::fmt::Write;

use crate::derived::cared_edges;
use crate::graph::{Digraph, Graph, VertexId};

pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Vertices outside `base` are drawn as boxes; edges cared for by a common
/// out-neighbor are drawn dashed with the carers as label.
pub fn digraph_to_dot(d: &Digraph, base: &[VertexId]) -> String {
    let mut out = String::from("digraph D {\n");
    for v in 0..d.n() {
        if base.contains(&v) {
            let _ = writeln!(out, "  {v};");
        } else {
            let _ = writeln!(out, "  {v} [shape=box];");
        }
    }
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    if let Ok(cared) = cared_edges(d, base) {
        for ((u, v), carers) in cared {
            let names: Vec<_> = carers.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                out,
                "  {u} -> {v} [dir=none, style=dashed, constraint=false, label=\"cared by {}\"];",
                names.join(",")
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_cared_edges() {
        let d = Digraph::from_arcs(3, &[(0, 2), (1, 2)]).unwrap();
        let dot = digraph_to_dot(&d, &[0, 1]);
        assert!(dot.contains("2 [shape=box];"));
        assert!(dot.contains("0 -> 1 [dir=none, style=dashed"));
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(graph_to_dot(&g).contains("0 -- 1;"));
    }
}
