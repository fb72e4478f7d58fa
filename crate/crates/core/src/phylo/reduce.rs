//! Value-preserving reductions and exact decompositions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, Subgraph, VertexId};
use crate::structure::{clique_leaf_blocks, is_vertex_transitive, pendant_vertices};

use super::pipeline::exact_value;
use super::PhyloResult;

/// One reduction, in host vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ReductionStep {
    /// A degree-one vertex removed.
    Pendant { vertex: VertexId, neighbor: VertexId },
    /// A complete block with one cut vertex: all but the cut vertex removed.
    CliqueLeafBlock { block: Vec<VertexId>, cut: VertexId },
    /// A whole component that is complete (or a single vertex) dropped.
    CompleteComponent { vertices: Vec<VertexId> },
    /// A component kept as a kernel.
    Kernel { vertices: Vec<VertexId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Irreducible connected pieces with their host vertex ids.
    pub kernels: Vec<(Graph, Vec<VertexId>)>,
    /// Value added on top of the kernels' sum; every step preserves the value.
    pub constant: usize,
    pub log: Vec<ReductionStep>,
}

impl Reduction {
    pub fn is_trivial(&self) -> bool {
        self.log.iter().all(|s| matches!(s, ReductionStep::Kernel { .. })) && self.kernels.len() <= 1
    }

    /// Builds a phylogeny digraph for the host graph from one digraph per
    /// kernel (positional base, extras after the kernel's vertices).
    /// Extras are renumbered after the host's vertices in kernel order.
    pub fn reassemble(&self, n: usize, kernel_digraphs: &[Digraph]) -> Digraph {
        assert_eq!(kernel_digraphs.len(), self.kernels.len());
        let mut arcs = Vec::new();
        let mut extras = 0;
        for ((kernel, map), d) in self.kernels.iter().zip(kernel_digraphs) {
            let k = kernel.n();
            let relabel = |x: usize| if x < k { map[x] } else { n + extras + (x - k) };
            arcs.extend(d.arcs().map(|(a, b)| (relabel(a), relabel(b))));
            extras += d.n() - k;
        }
        for step in self.log.iter().rev() {
            match step {
                ReductionStep::Pendant { vertex, neighbor } => arcs.push((*neighbor, *vertex)),
                ReductionStep::CliqueLeafBlock { block, cut } => {
                    let sink = *block.iter().find(|&&v| v != *cut).expect("block has a non-cut vertex");
                    arcs.extend(block.iter().filter(|&&k| k != sink).map(|&k| (k, sink)));
                }
                ReductionStep::CompleteComponent { vertices } => {
                    if let Some((&sink, rest)) = vertices.split_first() {
                        arcs.extend(rest.iter().map(|&k| (k, sink)));
                    }
                }
                ReductionStep::Kernel { .. } => {}
            }
        }
        arcs.sort_unstable();
        Digraph::from_arcs(n + extras, &arcs).expect("reassembled arcs are simple")
    }
}

/// Peels pendant vertices and clique leaf blocks, then splits into
/// components, dropping complete ones. p(G) is the sum over the kernels.
pub fn reduce(g: &Graph) -> Reduction {
    let mut alive: BTreeSet<VertexId> = (0..g.n()).collect();
    let mut log = Vec::new();
    loop {
        let verts: Vec<_> = alive.iter().copied().collect();
        let (h, map) = g.induced_subgraph(&verts);
        if let Some(&v) = pendant_vertices(&h).first() {
            log.push(ReductionStep::Pendant {
                vertex: map[v],
                neighbor: map[h.neighbors(v)[0]],
            });
            alive.remove(&map[v]);
            continue;
        }
        if let Some((edges, cut)) = clique_leaf_blocks(&h).into_iter().next() {
            let block: BTreeSet<_> = edges.iter().flat_map(|&(u, v)| [map[u], map[v]]).collect();
            let cut = map[cut];
            for v in &block {
                if *v != cut {
                    alive.remove(v);
                }
            }
            log.push(ReductionStep::CliqueLeafBlock {
                block: block.into_iter().collect(),
                cut,
            });
            continue;
        }
        let mut kernels = Vec::new();
        for comp in h.connected_components() {
            let vertices: Vec<_> = comp.iter().map(|&v| map[v]).collect();
            let (kernel, kmap) = g.induced_subgraph(&vertices);
            if kernel.m() == kernel.n() * (kernel.n() - 1) / 2 {
                log.push(ReductionStep::CompleteComponent { vertices });
            } else {
                log.push(ReductionStep::Kernel { vertices });
                kernels.push((kernel, kmap));
            }
        }
        return Reduction {
            kernels,
            constant: 0,
            log,
        };
    }
}

/// Exact value from a decomposition whose parts partition the edges, keep
/// every cycle inside one part, and are all but at most one vertex-transitive.
pub fn decompose_equal(g: &Graph, parts: &[Subgraph]) -> Result<PhyloResult> {
    let violated = |clause: &str, detail: String| Error::ConditionViolated {
        clause: clause.into(),
        detail,
    };
    for part in parts {
        part.check_within(g)?;
    }
    let mut owner = std::collections::BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        if !part.to_graph().0.is_connected() {
            return Err(violated("connected", format!("part {i} is disconnected")));
        }
        for &e in &part.edges {
            if let Some(j) = owner.insert(e, i) {
                return Err(violated("i", format!("edge {}-{} lies in parts {j} and {i}", e.0, e.1)));
            }
        }
    }
    if let Some((u, v)) = g.edges().find(|e| !owner.contains_key(e)) {
        return Err(violated("i", format!("edge {u}-{v} lies in no part")));
    }
    // Every cycle lies in a block and any two edges of a 2-connected block lie
    // on a common cycle, so the cycle condition says each block is in one part.
    let (_, blocks) = g.cut_vertices_and_blocks();
    for block in &blocks {
        let first = owner[&block[0]];
        if let Some(&(u, v)) = block.iter().find(|e| owner[*e] != first) {
            return Err(violated(
                "ii",
                format!("a cycle through edge {u}-{v} leaves part {first}"),
            ));
        }
    }
    let mut intransitive = 0;
    for part in parts {
        if !is_vertex_transitive(&part.to_graph().0)? {
            intransitive += 1;
        }
    }
    if intransitive > 1 {
        return Err(violated(
            "iii",
            format!("{intransitive} parts are not vertex-transitive; at most one may be"),
        ));
    }
    let mut total = 0;
    for part in parts {
        total += exact_value(&part.to_graph().0)?;
    }
    Ok(PhyloResult::exact(total, "exact decomposition"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::validate_positional;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn tree_vanishes() {
        let tree = graph(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        let r = reduce(&tree);
        assert!(r.kernels.is_empty());
        let d = r.reassemble(6, &[]);
        assert!(validate_positional(&d, &tree).is_ok());
    }

    #[test]
    fn leaf_block_removed() {
        let g = graph(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (2, 5), (4, 5)]);
        let r = reduce(&g);
        assert_eq!(r.kernels.len(), 1);
        assert_eq!(r.kernels[0].1, vec![0, 1, 2, 3]);
        assert_eq!(r.kernels[0].0.m(), 4);
    }

    #[test]
    fn disjoint_cycles() {
        let g = graph(9, &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (4, 8)]);
        let r = reduce(&g);
        assert_eq!(r.kernels.len(), 2);
    }

    #[test]
    fn bowtie_parts() {
        let g = graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
        let parts = [
            Subgraph::from_edges([(0, 1), (0, 2), (1, 2)]),
            Subgraph::from_edges([(2, 3), (2, 4), (3, 4)]),
        ];
        assert_eq!(decompose_equal(&g, &parts).unwrap().value(), Some(0));
        let whole = [Subgraph::whole(&g)];
        assert_eq!(decompose_equal(&g, &whole).unwrap().value(), Some(0));
    }

    #[test]
    fn cycle_split_rejected() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let parts = [
            Subgraph::from_edges([(0, 1), (1, 2)]),
            Subgraph::from_edges([(2, 3), (0, 3)]),
        ];
        assert!(matches!(
            decompose_equal(&c4, &parts),
            Err(Error::ConditionViolated { clause, .. }) if clause == "ii"
        ));
    }
}
