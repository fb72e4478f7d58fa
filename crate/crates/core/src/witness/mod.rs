//! Explicit certificates: figure data, restriction to subgraphs, and
//! constructions attaining the upper bounds.

pub mod catalog;
pub mod construct;
pub mod restriction;

pub use catalog::{figure, CatalogEntry, FIGURE_NAMES};
pub use construct::{
    construct_gminus_caring, construct_k4free_upper, construct_k4free_upper_with_cap, construct_triangle_free,
    ConstructionTrace, TraceStep,
};
pub use restriction::restriction_digraph;
