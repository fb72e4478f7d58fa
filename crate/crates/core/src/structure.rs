//! Structural census: triangles, diamonds, K4s, the triangle-edge-deleted
//! graph, maximal cliques, edge clique covers and vertex transitivity.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph, VertexId};

/// Default vertex cap for the exponential routines.
pub const DEFAULT_SIZE_CAP: usize = 12;

/// Cap for brute-force vertex transitivity.
pub const TRANSITIVITY_CAP: usize = 10;

/// Two triangles sharing exactly one edge (K4 minus an edge).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diamond {
    pub vertices: [VertexId; 4],
    /// The edge both triangles contain.
    pub shared: (VertexId, VertexId),
    /// The two non-adjacent vertices.
    pub tips: (VertexId, VertexId),
}

impl Diamond {
    pub fn edges(&self) -> [(VertexId, VertexId); 5] {
        let (x, z) = self.shared;
        let (y, w) = self.tips;
        [
            edge_key(x, z),
            edge_key(x, y),
            edge_key(x, w),
            edge_key(z, y),
            edge_key(z, w),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub t: usize,
    pub triangle_list: Vec<[VertexId; 3]>,
    pub d: usize,
    pub diamond_list: Vec<Diamond>,
    pub has_k4: bool,
    pub diamonds_edge_disjoint: bool,
    pub g_minus: Graph,
    pub g_minus_components: Vec<Vec<VertexId>>,
}

impl StructureReport {
    /// Connected, K4-free, with pairwise edge-disjoint diamonds.
    pub fn in_k4free_scope(&self, g: &Graph) -> bool {
        !self.has_k4 && self.diamonds_edge_disjoint && g.is_connected()
    }

    /// Edges lying on at least one triangle.
    pub fn triangle_edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.triangle_list
            .iter()
            .flat_map(|&[a, b, c]| [(a, b), (a, c), (b, c)])
            .collect()
    }
}

pub fn triangles(g: &Graph) -> Vec<[VertexId; 3]> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                out.push([u, v, w]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Induced diamonds: vertex 4-sets spanning exactly five edges.
pub fn diamonds(g: &Graph) -> Vec<Diamond> {
    let mut out = Vec::new();
    for (x, z) in g.edges() {
        let common: Vec<_> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&c| g.has_edge(z, c))
            .collect();
        for (i, &y) in common.iter().enumerate() {
            for &w in &common[i + 1..] {
                if !g.has_edge(y, w) {
                    let mut vertices = [x, z, y, w];
                    vertices.sort_unstable();
                    out.push(Diamond {
                        vertices,
                        shared: (x, z),
                        tips: (y, w),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

pub fn census(g: &Graph) -> StructureReport {
    let triangle_list = triangles(g);
    let diamond_list = diamonds(g);
    let has_k4 = triangle_list.iter().any(|&[a, b, c]| {
        g.neighbors(c)
            .iter()
            .any(|&w| w > c && g.has_edge(a, w) && g.has_edge(b, w))
    });
    let mut seen = BTreeSet::new();
    let diamonds_edge_disjoint = diamond_list
        .iter()
        .flat_map(|d| d.edges())
        .all(|e| seen.insert(e));
    let tri_edges: BTreeSet<_> = triangle_list
        .iter()
        .flat_map(|&[a, b, c]| [(a, b), (a, c), (b, c)])
        .collect();
    let g_minus = g.without_edges(&tri_edges.into_iter().collect::<Vec<_>>());
    let g_minus_components = g_minus.connected_components();
    StructureReport {
        t: triangle_list.len(),
        triangle_list,
        d: diamond_list.len(),
        diamond_list,
        has_k4,
        diamonds_edge_disjoint,
        g_minus,
        g_minus_components,
    }
}

/// The component of the triangle-edge-deleted graph containing `w`.
pub fn component_of_gminus(report: &StructureReport, w: VertexId) -> Result<&[VertexId]> {
    report
        .g_minus_components
        .iter()
        .find(|c| c.binary_search(&w).is_ok())
        .map(Vec::as_slice)
        .ok_or(Error::UnknownVertex(w))
}

/// All inclusion-maximal cliques, each sorted, in lexicographic order.
/// Isolated vertices give singleton cliques.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let all: Vec<_> = (0..g.n()).collect();
    bron_kerbosch(g, &mut Vec::new(), all, Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<VertexId>,
    p: Vec<VertexId>,
    mut x: Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("p is non-empty");
    let candidates: Vec<_> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    let mut p = p;
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Exact edge clique cover number with the default size cap.
pub fn edge_clique_cover_number(g: &Graph) -> Result<usize> {
    edge_clique_cover_number_with_cap(g, DEFAULT_SIZE_CAP)
}

/// Branch and bound over uncovered edges: the smallest uncovered edge is
/// covered by each maximal clique containing it in turn (largest first).
/// The bound is a greedy set of uncovered edges no two of which fit in one clique.
pub fn edge_clique_cover_number_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    if g.n() > cap {
        return Err(Error::TooLarge { n: g.n(), cap });
    }
    let edges = g.edge_list();
    if edges.is_empty() {
        return Ok(0);
    }
    let index: BTreeMap<_, _> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let cliques = maximal_cliques(g);
    let clique_cover: Vec<BitSet> = cliques
        .iter()
        .map(|c| {
            let mut s = BitSet::with_len(edges.len());
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    s.insert(index[&edge_key(u, v)]);
                }
            }
            s
        })
        .collect();
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (ci, cover) in clique_cover.iter().enumerate() {
        for e in cover.iter() {
            by_edge[e].push(ci);
        }
    }
    for list in &mut by_edge {
        list.sort_by_key(|&ci| (std::cmp::Reverse(cliques[ci].len()), ci));
    }
    // co[e]: edges sharing a clique with e
    let co: Vec<BitSet> = (0..edges.len())
        .map(|e| {
            let mut s = BitSet::with_len(edges.len());
            for &ci in &by_edge[e] {
                s.union_with(&clique_cover[ci]);
            }
            s
        })
        .collect();
    let search = CoverSearch {
        m: edges.len(),
        clique_cover,
        by_edge,
        co,
    };
    let mut best = edges.len();
    search.dfs(&BitSet::with_len(edges.len()), 0, &mut best);
    Ok(best)
}

struct CoverSearch {
    m: usize,
    clique_cover: Vec<BitSet>,
    by_edge: Vec<Vec<usize>>,
    co: Vec<BitSet>,
}

impl CoverSearch {
    fn lower_bound(&self, covered: &BitSet) -> usize {
        let mut blocked = covered.clone();
        let mut count = 0;
        while let Some(e) = blocked.first_missing(self.m) {
            count += 1;
            blocked.insert(e);
            blocked.union_with(&self.co[e]);
        }
        count
    }

    fn dfs(&self, covered: &BitSet, used: usize, best: &mut usize) {
        let Some(e) = covered.first_missing(self.m) else {
            *best = (*best).min(used);
            return;
        };
        if used + self.lower_bound(covered) >= *best {
            return;
        }
        for &ci in &self.by_edge[e] {
            let mut next = covered.clone();
            next.union_with(&self.clique_cover[ci]);
            self.dfs(&next, used + 1, best);
        }
    }
}

/// True iff the automorphism group acts transitively on the vertices.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n > TRANSITIVITY_CAP {
        return Err(Error::TooLarge { n, cap: TRANSITIVITY_CAP });
    }
    if n <= 1 {
        return Ok(true);
    }
    if (1..n).any(|v| g.degree(v) != g.degree(0)) {
        return Ok(false);
    }
    // the orbit of vertex 0 must be everything
    Ok((0..n).all(|target| {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = target;
        used[target] = true;
        extend_automorphism(g, 1, &mut map, &mut used)
    }))
}

fn extend_automorphism(g: &Graph, next: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let n = g.n();
    if next == n {
        return true;
    }
    for image in 0..n {
        if used[image] || g.degree(image) != g.degree(next) {
            continue;
        }
        let consistent = (0..next).all(|u| g.has_edge(u, next) == g.has_edge(map[u], image));
        if !consistent {
            continue;
        }
        map[next] = image;
        used[image] = true;
        if extend_automorphism(g, next + 1, map, used) {
            return true;
        }
        used[image] = false;
        map[next] = usize::MAX;
    }
    false
}

pub fn pendant_vertices(g: &Graph) -> Vec<VertexId> {
    (0..g.n()).filter(|&v| g.degree(v) == 1).collect()
}

/// Complete blocks containing exactly one cut vertex, with that cut vertex.
pub fn clique_leaf_blocks(g: &Graph) -> Vec<(Vec<(VertexId, VertexId)>, VertexId)> {
    let (cuts, blocks) = g.cut_vertices_and_blocks();
    let vertex_sets = Graph::block_vertex_sets(&blocks);
    blocks
        .into_iter()
        .zip(vertex_sets)
        .filter_map(|(edges, vs)| {
            let k = vs.len();
            if edges.len() != k * (k - 1) / 2 {
                return None;
            }
            let block_cuts: Vec<_> = vs.iter().copied().filter(|v| cuts.contains(v)).collect();
            (block_cuts.len() == 1).then(|| (edges, block_cuts[0]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn diamond() -> Graph {
        graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    }

    fn paw() -> Graph {
        graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)])
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &edges)
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        graph(n, &edges)
    }

    #[test]
    fn census_diamond() {
        let r = census(&diamond());
        assert_eq!((r.t, r.d, r.has_k4), (2, 1, false));
        assert_eq!(r.g_minus.m(), 0);
        assert_eq!(r.g_minus_components.len(), 4);
        assert_eq!(r.diamond_list[0].shared, (1, 2));
        assert_eq!(r.diamond_list[0].tips, (0, 3));
    }

    #[test]
    fn census_c5_and_k4() {
        let r = census(&cycle(5));
        assert_eq!((r.t, r.d), (0, 0));
        assert_eq!(r.g_minus, cycle(5));
        assert_eq!(r.g_minus_components.len(), 1);
        let r = census(&complete(4));
        assert!(r.has_k4);
        assert_eq!(r.t, 4);
        // K4 contains no induced diamond
        assert_eq!(r.d, 0);
    }

    #[test]
    fn gminus_component_lookup() {
        let r = census(&diamond());
        for w in 0..4 {
            assert_eq!(component_of_gminus(&r, w).unwrap(), &[w]);
        }
        let r = census(&cycle(5));
        assert_eq!(component_of_gminus(&r, 3).unwrap(), &[0, 1, 2, 3, 4]);
        let r = census(&paw());
        assert_eq!(component_of_gminus(&r, 3).unwrap(), &[2, 3]);
        assert_eq!(component_of_gminus(&r, 9), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn cliques() {
        assert_eq!(maximal_cliques(&diamond()), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(
            maximal_cliques(&cycle(4)),
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
        assert_eq!(maximal_cliques(&complete(4)), vec![vec![0, 1, 2, 3]]);
        assert_eq!(maximal_cliques(&Graph::empty(2)), vec![vec![0], vec![1]]);
    }

    #[test]
    fn clique_cover_numbers() {
        assert_eq!(edge_clique_cover_number(&diamond()).unwrap(), 2);
        assert_eq!(edge_clique_cover_number(&cycle(5)).unwrap(), 5);
        assert_eq!(edge_clique_cover_number(&complete(4)).unwrap(), 1);
        assert_eq!(edge_clique_cover_number(&Graph::empty(3)).unwrap(), 0);
        assert_eq!(
            edge_clique_cover_number(&Graph::empty(13)),
            Err(Error::TooLarge { n: 13, cap: 12 })
        );
    }

    #[test]
    fn clique_cover_matches_brute_force() {
        // brute force over subsets of maximal cliques on all graphs with 5 vertices
        let pairs: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = graph(5, &edges);
            let cl: Vec<_> = maximal_cliques(&g).into_iter().filter(|c| c.len() >= 2).collect();
            let mut best = usize::MAX;
            for sub in 0u32..(1 << cl.len()) {
                let covered = edges.iter().all(|&(u, v)| {
                    (0..cl.len()).any(|i| sub >> i & 1 == 1 && cl[i].contains(&u) && cl[i].contains(&v))
                });
                if covered {
                    best = best.min(sub.count_ones() as usize);
                }
            }
            assert_eq!(edge_clique_cover_number(&g).unwrap(), best, "{edges:?}");
        }
    }

    #[test]
    fn transitivity() {
        assert!(is_vertex_transitive(&complete(5)).unwrap());
        assert!(is_vertex_transitive(&cycle(6)).unwrap());
        assert!(!is_vertex_transitive(&paw()).unwrap());
        // regular but not transitive: the triangular prism plus... use two
        // disjoint graphs of different shape with equal degrees
        let c3_c4 = graph(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)]);
        assert!(!is_vertex_transitive(&c3_c4).unwrap());
        assert!(is_vertex_transitive(&Graph::empty(11)).is_err());
    }

    #[test]
    fn pendants_and_leaf_blocks() {
        assert_eq!(pendant_vertices(&paw()), vec![3]);
        assert!(pendant_vertices(&cycle(4)).is_empty());
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(pendant_vertices(&star), vec![1, 2, 3]);

        let g1 = graph(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (2, 5), (4, 5)]);
        assert_eq!(clique_leaf_blocks(&g1), vec![(vec![(2, 4), (2, 5), (4, 5)], 2)]);
        assert!(clique_leaf_blocks(&cycle(4)).is_empty());
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(clique_leaf_blocks(&p3), vec![(vec![(0, 1)], 1), (vec![(1, 2)], 1)]);
    }
}
