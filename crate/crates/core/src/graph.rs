//! Undirected and directed graph values over dense vertex ids.
//!
//! Both types are immutable once built. Vertices are `0..n`; labels are for
//! presentation only and never take part in equality.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Normalizes an undirected pair to `(min, max)`.
#[inline]
pub fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Finite simple undirected graph.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<VertexId>>,
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert(edge_key(u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            m: seen.len(),
            labels: None,
        })
    }

    /// Like [`Graph::from_edges`] but silently merges duplicates. Used
    /// internally where edge sets are produced by unions.
    pub(crate) fn from_edge_set(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let set: BTreeSet<_> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| edge_key(u, v))
            .collect();
        let list: Vec<_> = set.into_iter().collect();
        Graph::from_edges(n, &list).expect("normalized edge set")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::VertexOutOfRange {
                vertex: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges().collect()
    }

    /// True iff every pair of distinct vertices in `set` is adjacent.
    pub fn is_clique(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Adjacency rows as bitmasks. Only for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::TooLarge { n: self.n, cap: 64 });
        }
        Ok(self
            .adj
            .iter()
            .map(|row| row.iter().fold(0u64, |acc, &v| acc | (1 << v)))
            .collect())
    }

    /// Induced subgraph on `vertices`, relabelled to `0..k` in the given order.
    /// Returns the graph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        let mut g = Graph::from_edge_set(vertices.len(), edges);
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        (g, vertices.to_vec())
    }

    /// Same vertex set with the given edges removed.
    pub fn without_edges(&self, removed: &[(VertexId, VertexId)]) -> Graph {
        let removed: BTreeSet<_> = removed.iter().map(|&(u, v)| edge_key(u, v)).collect();
        let mut g = Graph::from_edge_set(self.n, self.edges().filter(|e| !removed.contains(e)));
        g.labels = self.labels.clone();
        g
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Maximal connected vertex sets, each sorted, ordered by minimum member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Cut vertices and biconnected blocks (as edge sets). Every edge lies in
    /// exactly one block; blocks are ordered by their smallest edge.
    pub fn cut_vertices_and_blocks(&self) -> (BTreeSet<VertexId>, Vec<Vec<(VertexId, VertexId)>>) {
        let mut st = BlockState {
            disc: vec![usize::MAX; self.n],
            low: vec![0; self.n],
            time: 0,
            edge_stack: Vec::new(),
            cuts: BTreeSet::new(),
            blocks: Vec::new(),
        };
        for root in 0..self.n {
            if st.disc[root] != usize::MAX {
                continue;
            }
            let mut children = 0;
            st.disc[root] = st.time;
            st.low[root] = st.time;
            st.time += 1;
            for &w in &self.adj[root] {
                if st.disc[w] == usize::MAX {
                    children += 1;
                    st.edge_stack.push((root, w));
                    self.block_dfs(w, root, &mut st);
                    st.low[root] = st.low[root].min(st.low[w]);
                    st.pop_block((root, w));
                }
            }
            if children >= 2 {
                st.cuts.insert(root);
            }
        }
        for b in &mut st.blocks {
            b.sort_unstable();
        }
        st.blocks.sort();
        (st.cuts, st.blocks)
    }

    fn block_dfs(&self, u: VertexId, parent: VertexId, st: &mut BlockState) {
        st.disc[u] = st.time;
        st.low[u] = st.time;
        st.time += 1;
        for &w in &self.adj[u] {
            if st.disc[w] == usize::MAX {
                st.edge_stack.push((u, w));
                self.block_dfs(w, u, st);
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    st.cuts.insert(u);
                    st.pop_block((u, w));
                }
            } else if w != parent && st.disc[w] < st.disc[u] {
                st.edge_stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }

    /// Vertex sets of the blocks returned by [`Graph::cut_vertices_and_blocks`].
    pub fn block_vertex_sets(blocks: &[Vec<(VertexId, VertexId)>]) -> Vec<Vec<VertexId>> {
        blocks
            .iter()
            .map(|b| {
                let set: BTreeSet<_> = b.iter().flat_map(|&(u, v)| [u, v]).collect();
                set.into_iter().collect()
            })
            .collect()
    }
}

struct BlockState {
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(VertexId, VertexId)>,
    cuts: BTreeSet<VertexId>,
    blocks: Vec<Vec<(VertexId, VertexId)>>,
}

impl BlockState {
    fn pop_block(&mut self, until: (VertexId, VertexId)) {
        let mut block = Vec::new();
        while let Some(e) = self.edge_stack.pop() {
            block.push(edge_key(e.0, e.1));
            if e == until {
                break;
            }
        }
        if !block.is_empty() {
            self.blocks.push(block);
        }
    }
}

/// A subgraph given by explicit vertex and edge sets over the host's ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<(VertexId, VertexId)>,
}

impl Subgraph {
    /// Subgraph spanned by an edge set; its vertices are the endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let edges: BTreeSet<_> = edges.into_iter().map(|(u, v)| edge_key(u, v)).collect();
        let vertices = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Subgraph { vertices, edges }
    }

    /// Induced subgraph of `g` on `vertices`.
    pub fn induced(g: &Graph, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let edges = g
            .edges()
            .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
            .collect();
        Subgraph { vertices, edges }
    }

    pub fn whole(g: &Graph) -> Self {
        Subgraph::induced(g, 0..g.n())
    }

    /// Checks that the subgraph lives inside `g`.
    pub fn check_within(&self, g: &Graph) -> Result<()> {
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
        }
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) || !self.vertices.contains(&u) || !self.vertices.contains(&v) {
                return Err(Error::ConditionViolated {
                    clause: "subgraph".into(),
                    detail: format!("edge {u}-{v} is not an edge of the host graph on the part's vertices"),
                });
            }
        }
        Ok(())
    }

    /// Relabels to a standalone graph on `0..k` (ascending host ids).
    pub fn to_graph(&self) -> (Graph, Vec<VertexId>) {
        let map: Vec<_> = self.vertices.iter().copied().collect();
        let index = |v: VertexId| map.binary_search(&v).expect("edge endpoint in vertex set");
        let g = Graph::from_edge_set(map.len(), self.edges.iter().map(|&(u, v)| (index(u), index(v))));
        (g, map)
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&edge_key(u, v))
    }

    /// True iff `clique` (a clique of the host) is a clique of this subgraph.
    pub fn contains_clique(&self, clique: &[VertexId]) -> bool {
        clique.iter().all(|v| self.vertices.contains(v))
            && clique
                .iter()
                .enumerate()
                .all(|(i, &u)| clique[i + 1..].iter().all(|&v| self.contains_edge(u, v)))
    }
}

/// Acyclic labeling: `label(u) > label(v)` for every arc `(u, v)`; labels are `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrder {
    labels: Vec<usize>,
}

impl VertexOrder {
    pub fn label(&self, v: VertexId) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
}

/// Finite simple digraph. Acyclicity is a checked property, not an invariant.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<VertexId>>,
    inn: Vec<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out == other.out
    }
}

impl Eq for Digraph {}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            labels: None,
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_sorted_set(n, seen))
    }

    fn from_sorted_set(n: usize, arcs: BTreeSet<(VertexId, VertexId)>) -> Self {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            d.out[u].push(v);
            d.inn[v].push(u);
        }
        for row in &mut d.inn {
            row.sort_unstable();
        }
        d
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::VertexOutOfRange {
                vertex: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.inn[v]
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&v| (u, v)))
    }

    pub fn arc_list(&self) -> Vec<(VertexId, VertexId)> {
        self.arcs().collect()
    }

    /// Arcs with tail in `tails` and head in `heads`.
    pub fn arcs_between(&self, tails: &BTreeSet<VertexId>, heads: &BTreeSet<VertexId>) -> Vec<(VertexId, VertexId)> {
        self.arcs()
            .filter(|(u, v)| tails.contains(u) && heads.contains(v))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic_labeling().is_ok()
    }

    /// Labels sinks first, breaking ties by smallest id.
    pub fn acyclic_labeling(&self) -> Result<VertexOrder> {
        let mut remaining_out: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<VertexId>> = (0..self.n)
            .filter(|&v| remaining_out[v] == 0)
            .map(Reverse)
            .collect();
        let mut labels = vec![0; self.n];
        let mut next = 1;
        while let Some(Reverse(v)) = ready.pop() {
            labels[v] = next;
            next += 1;
            for &u in &self.inn[v] {
                remaining_out[u] -= 1;
                if remaining_out[u] == 0 {
                    ready.push(Reverse(u));
                }
            }
        }
        if next != self.n + 1 {
            return Err(Error::CyclicDigraph);
        }
        Ok(VertexOrder { labels })
    }

    /// New digraph with `extra` more vertices and the arcs edited.
    pub fn edited(
        &self,
        extra: usize,
        removed: &[(VertexId, VertexId)],
        added: &[(VertexId, VertexId)],
    ) -> Result<Digraph> {
        let removed: BTreeSet<_> = removed.iter().copied().collect();
        let mut arcs: BTreeSet<_> = self.arcs().filter(|a| !removed.contains(a)).collect();
        let n = self.n + extra;
        for &(u, v) in added {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            arcs.insert((u, v));
        }
        Ok(Digraph::from_sorted_set(n, arcs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs).unwrap()
    }

    #[test]
    fn acyclicity_basics() {
        assert!(digraph(3, &[]).is_acyclic());
        assert!(!digraph(3, &[(0, 1), (1, 2), (2, 0)]).is_acyclic());
        assert_eq!(
            digraph(3, &[(0, 1), (1, 2), (2, 0)]).acyclic_labeling(),
            Err(Error::CyclicDigraph)
        );
    }

    #[test]
    fn labeling_tie_break() {
        let f = digraph(2, &[(0, 1)]).acyclic_labeling().unwrap();
        assert_eq!((f.label(0), f.label(1)), (2, 1));
        let f = digraph(2, &[]).acyclic_labeling().unwrap();
        assert_eq!((f.label(0), f.label(1)), (1, 2));
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(Digraph::from_arcs(2, &[(0, 1), (1, 0)]).is_ok());
        assert_eq!(Digraph::from_arcs(2, &[(0, 1), (0, 1)]), Err(Error::DuplicateEdge(0, 1)));
    }

    #[test]
    fn components() {
        // paw minus its triangle edges: only the pendant edge survives
        let g = Graph::from_edges(4, &[(2, 3)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0], vec![1], vec![2, 3]]);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c4.connected_components().len(), 1);
        assert_eq!(Graph::empty(5).connected_components().len(), 5);
    }

    #[test]
    fn blocks_and_cuts() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (cuts, blocks) = p3.cut_vertices_and_blocks();
        assert_eq!(cuts.into_iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(blocks, vec![vec![(0, 1)], vec![(1, 2)]]);

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (cuts, blocks) = c4.cut_vertices_and_blocks();
        assert!(cuts.is_empty());
        assert_eq!(blocks.len(), 1);

        // triangle glued to a 4-cycle at vertex 2
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (2, 5), (4, 5)]).unwrap();
        let (cuts, blocks) = g.cut_vertices_and_blocks();
        assert_eq!(cuts.into_iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(blocks.len(), 2);
    }

    #[test]
    fn arc_selector() {
        let d = digraph(3, &[(0, 1), (1, 2)]);
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(d.arcs_between(&set(&[0]), &set(&[1])), vec![(0, 1)]);
        assert!(d.arcs_between(&set(&[2]), &set(&[0])).is_empty());
        assert_eq!(d.arcs_between(&set(&[0, 1, 2]), &set(&[0, 1, 2])), d.arc_list());
    }

    #[test]
    fn labeling_exists_iff_acyclic_exhaustive() {
        // every digraph on up to 4 vertices (5 would be 2^20 digraphs per size,
        // covered in the integration suite)
        for n in 0..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let arcs: Vec<_> = (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect();
                let d = digraph(n, &arcs);
                let cyclic = has_cycle_dfs(&d);
                match d.acyclic_labeling() {
                    Ok(f) => {
                        assert!(!cyclic);
                        assert!(arcs.iter().all(|&(u, v)| f.label(u) > f.label(v)));
                        let mut seen: Vec<_> = f.labels().to_vec();
                        seen.sort_unstable();
                        assert_eq!(seen, (1..=n).collect::<Vec<_>>());
                    }
                    Err(_) => assert!(cyclic),
                }
            }
        }
    }

    fn has_cycle_dfs(d: &Digraph) -> bool {
        fn visit(d: &Digraph, v: usize, state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in d.out_neighbors(v) {
                if state[w] == 1 || (state[w] == 0 && visit(d, w, state)) {
                    return true;
                }
            }
            state[v] = 2;
            false
        }
        let mut state = vec![0u8; d.n()];
        (0..d.n()).any(|v| state[v] == 0 && visit(d, v, &mut state))
    }
}
