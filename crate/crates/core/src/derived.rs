//! Graphs derived from a digraph, and phylogeny-digraph certificates.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{CertificateError, Error, Result};
use crate::graph::{edge_key, Digraph, Graph, VertexId};

/// Arc directions erased.
pub fn underlying_graph(d: &Digraph) -> Graph {
    Graph::from_edge_set(d.n(), d.arcs())
}

/// Joins every pair of vertices with a common out-neighbor.
pub fn competition_graph(d: &Digraph) -> Graph {
    let mut edges = BTreeSet::new();
    for w in 0..d.n() {
        let preds = d.in_neighbors(w);
        for (i, &u) in preds.iter().enumerate() {
            for &v in &preds[i + 1..] {
                edges.insert(edge_key(u, v));
            }
        }
    }
    Graph::from_edge_set(d.n(), edges)
}

/// Union of the underlying and competition graphs (the moral graph of `d`).
/// Only defined for acyclic digraphs.
pub fn phylogeny_graph(d: &Digraph) -> Result<Graph> {
    if !d.is_acyclic() {
        return Err(Error::CyclicDigraph);
    }
    Ok(phylogeny_graph_unchecked(d))
}

pub(crate) fn phylogeny_graph_unchecked(d: &Digraph) -> Graph {
    let mut edges: BTreeSet<_> = d.arcs().map(|(u, v)| edge_key(u, v)).collect();
    for w in 0..d.n() {
        let preds = d.in_neighbors(w);
        for (i, &u) in preds.iter().enumerate() {
            for &v in &preds[i + 1..] {
                edges.insert(edge_key(u, v));
            }
        }
    }
    Graph::from_edge_set(d.n(), edges)
}

/// A digraph proven to be a phylogeny digraph for some graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhyloCertificate {
    pub digraph: Digraph,
    /// `base[i]` is the digraph vertex playing graph vertex `i`.
    pub base: Vec<VertexId>,
    pub extra_count: usize,
}

impl PhyloCertificate {
    /// Digraph vertices outside the base, ascending.
    pub fn extra_vertices(&self) -> Vec<VertexId> {
        let base: BTreeSet<_> = self.base.iter().copied().collect();
        (0..self.digraph.n()).filter(|v| !base.contains(v)).collect()
    }
}

/// Checks that `d` is a phylogeny digraph for `g` with base vertex `base[i]`
/// standing for `g`'s vertex `i`.
pub fn validate_phylogeny_digraph(
    d: &Digraph,
    base: &[VertexId],
    g: &Graph,
) -> Result<PhyloCertificate, CertificateError> {
    if base.len() != g.n() {
        return Err(CertificateError::BaseMismatch(format!(
            "base has {} vertices but the graph has {}",
            base.len(),
            g.n()
        )));
    }
    let mut position = vec![usize::MAX; d.n()];
    for (i, &b) in base.iter().enumerate() {
        if b >= d.n() {
            return Err(CertificateError::BaseMismatch(format!(
                "base vertex {b} is not a vertex of the digraph"
            )));
        }
        if position[b] != usize::MAX {
            return Err(CertificateError::BaseMismatch(format!("base vertex {b} listed twice")));
        }
        position[b] = i;
    }
    if !d.is_acyclic() {
        return Err(CertificateError::NotAcyclic);
    }
    if let Some((tail, head)) = d
        .arcs()
        .find(|&(u, v)| position[u] == usize::MAX && position[v] != usize::MAX)
    {
        return Err(CertificateError::ArcIntoBase { tail, head });
    }
    let p = phylogeny_graph_unchecked(d);
    // Compare the induced subgraph in graph coordinates; report the
    // lexicographically first offending pair.
    let mut induced: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (u, v) in p.edges() {
        if position[u] != usize::MAX && position[v] != usize::MAX {
            induced.insert(edge_key(position[u], position[v]));
        }
    }
    let target: BTreeSet<_> = g.edges().collect();
    let first_missing = target.difference(&induced).next().copied();
    let first_extra = induced.difference(&target).next().copied();
    let offending = match (first_missing, first_extra) {
        (Some(a), Some(b)) => Some(if a < b { (a, true) } else { (b, false) }),
        (Some(a), None) => Some((a, true)),
        (None, Some(b)) => Some((b, false)),
        (None, None) => None,
    };
    if let Some(((u, v), missing)) = offending {
        return Err(CertificateError::NotInduced { u, v, missing });
    }
    Ok(PhyloCertificate {
        digraph: d.clone(),
        base: base.to_vec(),
        extra_count: d.n() - base.len(),
    })
}

/// Positional base: digraph vertex `i` is graph vertex `i` for `i < g.n()`.
pub fn validate_positional(d: &Digraph, g: &Graph) -> Result<PhyloCertificate, CertificateError> {
    let base: Vec<_> = (0..g.n()).collect();
    validate_phylogeny_digraph(d, &base, g)
}

/// Edges between base vertices that exist only through a common
/// out-neighbor, mapped to the set of such out-neighbors. Keys use digraph ids.
pub fn cared_edges(
    d: &Digraph,
    base: &[VertexId],
) -> Result<BTreeMap<(VertexId, VertexId), BTreeSet<VertexId>>, CertificateError> {
    if !d.is_acyclic() {
        return Err(CertificateError::NotAcyclic);
    }
    let in_base: BTreeSet<_> = base.iter().copied().collect();
    if let Some((tail, head)) = d
        .arcs()
        .find(|(u, v)| !in_base.contains(u) && in_base.contains(v))
    {
        return Err(CertificateError::ArcIntoBase { tail, head });
    }
    let mut cared: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
    for w in 0..d.n() {
        let preds = d.in_neighbors(w);
        for (i, &u) in preds.iter().enumerate() {
            for &v in &preds[i + 1..] {
                if in_base.contains(&u) && in_base.contains(&v) && !d.has_arc(u, v) && !d.has_arc(v, u) {
                    cared.entry(edge_key(u, v)).or_default().insert(w);
                }
            }
        }
    }
    Ok(cared)
}
