//! Text formats: edge lists, graph6 and Graphviz DOT.

pub mod dot;
pub mod edgelist;
pub mod graph6;

pub use dot::{digraph_to_dot, graph_to_dot};
pub use edgelist::{parse_digraph, parse_graph, write_digraph, write_graph, ParsedDigraph};
pub use graph6::{from_graph6, to_graph6};
