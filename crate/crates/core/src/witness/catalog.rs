//! Small named graphs and digraphs used as fixtures and examples.

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, VertexId};

pub const FIGURE_NAMES: [&str; 7] = ["fig1_G", "fig1_D", "fig2_G", "fig3_G1", "fig3_G2", "fig4_G1", "fig4_G2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    Graph(Graph),
    /// A digraph together with the vertices forming the graph it certifies.
    Digraph { digraph: Digraph, base: Vec<VertexId> },
}

impl CatalogEntry {
    pub fn into_graph(self) -> Option<Graph> {
        match self {
            CatalogEntry::Graph(g) => Some(g),
            CatalogEntry::Digraph { .. } => None,
        }
    }
}

const SQUARE_WITH_TRIANGLE: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (2, 5), (4, 5)];

/// Three triangles in a chain: 0-1-2, 3-4-5 and 4-5-6 around the path 2-3.
const TRIANGLE_CHAIN: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)];

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("catalog edges are valid")
}

/// Looks up a named fixture.
pub fn figure(name: &str) -> Result<CatalogEntry> {
    let entry = match name {
        "fig1_G" | "fig4_G1" => CatalogEntry::Graph(graph(6, SQUARE_WITH_TRIANGLE)),
        "fig1_D" => CatalogEntry::Digraph {
            digraph: Digraph::from_arcs(7, &[(0, 1), (0, 2), (1, 6), (2, 3), (2, 4), (3, 6), (5, 4)])
                .expect("catalog arcs are valid"),
            base: (0..6).collect(),
        },
        "fig2_G" => CatalogEntry::Graph(graph(6, &[(0, 1), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5)])),
        "fig3_G1" => {
            let mut edges = TRIANGLE_CHAIN.to_vec();
            for i in 0..7 {
                edges.push((7, 8 + i));
                edges.push((i, 8 + i));
            }
            CatalogEntry::Graph(graph(15, &edges))
        }
        "fig3_G2" => CatalogEntry::Graph(graph(7, TRIANGLE_CHAIN)),
        "fig4_G2" => CatalogEntry::Graph(graph(
            9,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 6),
                (2, 7),
                (2, 8),
                (3, 5),
                (4, 5),
                (6, 7),
                (6, 8),
                (7, 8),
            ],
        )),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::census;

    #[test]
    fn shapes() {
        let g = figure("fig2_G").unwrap().into_graph().unwrap();
        assert_eq!((g.n(), g.m(), census(&g).t), (6, 7, 0));
        let g = figure("fig3_G2").unwrap().into_graph().unwrap();
        let r = census(&g);
        assert_eq!((g.n(), g.m(), r.t, r.d), (7, 9, 3, 1));
        let g = figure("fig3_G1").unwrap().into_graph().unwrap();
        let r = census(&g);
        assert_eq!((g.n(), g.m(), r.t, r.d, r.g_minus_components.len()), (15, 23, 3, 1, 1));
        match figure("fig1_D").unwrap() {
            CatalogEntry::Digraph { digraph, base } => {
                assert_eq!((digraph.n(), digraph.arc_count(), base.len()), (7, 7, 6));
                assert!(digraph.is_acyclic());
            }
            _ => panic!("fig1_D is a digraph"),
        }
        assert_eq!(figure("fig1_G"), figure("fig4_G1"));
        assert!(matches!(figure("nope"), Err(Error::UnknownName(_))));
    }
}
