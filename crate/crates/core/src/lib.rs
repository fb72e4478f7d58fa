//! Phylogeny numbers of graphs: how many vertices must be added so that a
//! graph becomes an induced subgraph of the moral graph of a DAG whose
//! added vertices receive no arcs into the original graph.
//!
//! ```
//! use phylokit::{Graph, phylo::phylogeny_number_exact};
//!
//! let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
//! assert_eq!(phylogeny_number_exact(&c4).unwrap().value(), Some(1));
//! ```

mod bitset;
pub mod derived;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod phylo;
pub mod structure;
pub mod sweep;
pub mod witness;

pub use derived::{
    cared_edges, competition_graph, phylogeny_graph, underlying_graph, validate_phylogeny_digraph,
    validate_positional, PhyloCertificate,
};
pub use error::{CertificateError, Error, Result};
pub use graph::{Digraph, Graph, Subgraph, VertexId, VertexOrder};
pub use phylo::{Estimate, PhyloResult};
pub use structure::{census, StructureReport};
