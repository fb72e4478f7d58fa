//! Explicit phylogeny digraphs for triangle-free and K4-free graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::derived::{validate_positional, PhyloCertificate};
use crate::error::{Error, Result};
use crate::graph::{edge_key, Digraph, Graph, VertexId};
use crate::phylo::solver::{solve_phylogeny, SolverConfig};
use crate::structure::{census, diamonds, triangles, StructureReport};

type Edge = (VertexId, VertexId);

/// BFS forest arcs (parent to child, roots are component minima) and the
/// edges left off the forest, both in host ids.
fn forest(g: &Graph) -> (Vec<Edge>, Vec<Edge>) {
    let mut seen = vec![false; g.n()];
    let mut tree = Vec::new();
    let mut tree_edges = BTreeSet::new();
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    tree.push((u, v));
                    tree_edges.insert(edge_key(u, v));
                    queue.push_back(v);
                }
            }
        }
    }
    let rest = g.edges().filter(|e| !tree_edges.contains(e)).collect();
    (tree, rest)
}

/// Tree arcs plus one caring extra vertex per non-tree edge.
fn forest_arcs(g: &Graph) -> (Vec<(VertexId, VertexId)>, usize) {
    let (mut arcs, rest) = forest(g);
    for (i, &(u, v)) in rest.iter().enumerate() {
        arcs.push((u, g.n() + i));
        arcs.push((v, g.n() + i));
    }
    (arcs, rest.len())
}

fn certify(g: &Graph, extras: usize, arcs: &[(VertexId, VertexId)]) -> PhyloCertificate {
    let d = Digraph::from_arcs(g.n() + extras, arcs).expect("construction arcs are simple");
    validate_positional(&d, g).expect("construction yields a phylogeny digraph")
}

/// Optimal digraph for a connected triangle-free graph: a BFS tree from
/// vertex 0 oriented away from the root, and a dedicated caring vertex for
/// every non-tree edge (|E| - |V| + 1 extras).
pub fn construct_triangle_free(g: &Graph) -> Result<PhyloCertificate> {
    if !census(g).triangle_list.is_empty() {
        return Err(Error::NotTriangleFree);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (arcs, extras) = forest_arcs(g);
    Ok(certify(g, extras, &arcs))
}

fn check_k4free_scope(g: &Graph, report: &StructureReport) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::HypothesisViolated("graph is disconnected".into()));
    }
    if report.has_k4 {
        return Err(Error::HypothesisViolated("graph contains K4".into()));
    }
    if !report.diamonds_edge_disjoint {
        return Err(Error::HypothesisViolated("two diamonds share an edge".into()));
    }
    Ok(())
}

/// Optimal digraphs for the components of G⁻ plus one caring vertex per
/// triangle. Returns the certificate and whether it is known optimal
/// (exactly when G⁻ is connected).
pub fn construct_gminus_caring(g: &Graph) -> Result<(PhyloCertificate, bool)> {
    let report = census(g);
    check_k4free_scope(g, &report)?;
    let (mut arcs, mut extras) = forest_arcs(&report.g_minus);
    // forest_arcs numbers extras from g_minus.n() == g.n()
    for tri in &report.triangle_list {
        let x = g.n() + extras;
        arcs.extend(tri.iter().map(|&v| (v, x)));
        extras += 1;
    }
    let optimal = report.g_minus_components.len() == 1;
    Ok((certify(g, extras, &arcs), optimal))
}

/// One recorded step of the inductive construction, in final vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub op: String,
    pub params: serde_json::Value,
    pub added_vertices: Vec<VertexId>,
    pub added_arcs: Vec<(VertexId, VertexId)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed_arcs: Vec<(VertexId, VertexId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final")]
    pub final_cert: PhyloCertificate,
}

impl ConstructionTrace {
    /// Applies the steps in order to an arcless digraph on `n_base` vertices.
    pub fn replay(&self, n_base: usize) -> Result<Digraph> {
        let mut d = Digraph::empty(n_base);
        for step in &self.steps {
            d = d.edited(step.added_vertices.len(), &step.removed_arcs, &step.added_arcs)?;
        }
        Ok(d)
    }
}

/// Digraph under construction, shared by all branches of the recursion.
struct Builder {
    n_base: usize,
    next: usize,
    out: BTreeMap<VertexId, BTreeSet<VertexId>>,
    inn: BTreeMap<VertexId, BTreeSet<VertexId>>,
    steps: Vec<TraceStep>,
    size_cap: usize,
}

impl Builder {
    fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.out.get(&u).is_some_and(|s| s.contains(&v))
    }

    fn in_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.inn.get(&v).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    /// Smallest vertex caring for the edge uv, if the edge is cared.
    fn carer(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        if self.has_arc(u, v) || self.has_arc(v, u) {
            return None;
        }
        let a = self.out.get(&u)?;
        let b = self.out.get(&v)?;
        a.intersection(b).next().copied()
    }

    fn fresh(&mut self) -> VertexId {
        self.next += 1;
        self.next - 1
    }

    fn digraph(&self) -> Digraph {
        let arcs: Vec<_> = self
            .out
            .iter()
            .flat_map(|(&u, hs)| hs.iter().map(move |&v| (u, v)))
            .collect();
        Digraph::from_arcs(self.next, &arcs).expect("builder arcs are simple")
    }

    fn apply(
        &mut self,
        op: &str,
        params: serde_json::Value,
        added_vertices: Vec<VertexId>,
        added_arcs: Vec<(VertexId, VertexId)>,
        removed_arcs: Vec<(VertexId, VertexId)>,
    ) {
        for &(u, v) in &removed_arcs {
            self.out.entry(u).or_default().remove(&v);
            self.inn.entry(v).or_default().remove(&u);
        }
        for &(u, v) in &added_arcs {
            self.out.entry(u).or_default().insert(v);
            self.inn.entry(v).or_default().insert(u);
        }
        self.steps.push(TraceStep {
            op: op.into(),
            params,
            added_vertices,
            added_arcs,
            removed_arcs,
        });
    }
}

/// A connected piece of the graph being built: host vertex ids and edges.
#[derive(Clone)]
struct Piece {
    vertices: Vec<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl Piece {
    fn local(&self) -> Graph {
        let index = |v: VertexId| self.vertices.binary_search(&v).expect("edge inside piece");
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (index(u), index(v))).collect();
        Graph::from_edges(self.vertices.len(), &edges).expect("piece edges are simple")
    }

    fn without(&self, removed: &[(VertexId, VertexId)]) -> Piece {
        let mut edges = self.edges.clone();
        for &(u, v) in removed {
            edges.remove(&edge_key(u, v));
        }
        Piece {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    fn components(&self) -> Vec<Piece> {
        let local = self.local();
        local
            .connected_components()
            .into_iter()
            .map(|comp| {
                let vertices: Vec<_> = comp.iter().map(|&i| self.vertices[i]).collect();
                let set: BTreeSet<_> = vertices.iter().copied().collect();
                let edges = self
                    .edges
                    .iter()
                    .filter(|(u, _)| set.contains(u))
                    .copied()
                    .collect();
                Piece { vertices, edges }
            })
            .collect()
    }
}

/// Inductive construction for a connected K4-free graph with edge-disjoint
/// diamonds, using at most |E| - |V| - t + 1 extra vertices. Pieces with at
/// most two triangles are solved exactly when they fit the solver's cap;
/// larger pieces keep being reduced down to the triangle-free construction.
pub fn construct_k4free_upper(g: &Graph) -> Result<ConstructionTrace> {
    construct_k4free_upper_with_cap(g, crate::structure::DEFAULT_SIZE_CAP)
}

pub fn construct_k4free_upper_with_cap(g: &Graph, size_cap: usize) -> Result<ConstructionTrace> {
    let report = census(g);
    check_k4free_scope(g, &report)?;
    let mut builder = Builder {
        n_base: g.n(),
        next: g.n(),
        out: BTreeMap::new(),
        inn: BTreeMap::new(),
        steps: Vec::new(),
        size_cap,
    };
    let whole = Piece {
        vertices: (0..g.n()).collect(),
        edges: g.edges().collect(),
    };
    build(&mut builder, &whole)?;
    let d = builder.digraph();
    let final_cert = validate_positional(&d, g).expect("inductive construction yields a phylogeny digraph");
    debug_assert_eq!(builder.n_base, g.n());
    Ok(ConstructionTrace {
        steps: builder.steps,
        final_cert,
    })
}

fn build(b: &mut Builder, piece: &Piece) -> Result<()> {
    let local = piece.local();
    let tris = triangles(&local);
    if tris.len() <= 2 && piece.vertices.len() <= b.size_cap || tris.is_empty() {
        return base_case(b, piece, &local, tris.len());
    }
    let host = |v: VertexId| piece.vertices[v];
    if let Some(diamond) = diamonds(&local).into_iter().min_by_key(|d| {
        let mut vs = d.vertices.map(host);
        vs.sort_unstable();
        vs
    }) {
        let (s0, s1) = (host(diamond.shared.0), host(diamond.shared.1));
        let (x, z) = (s0.min(s1), s0.max(s1));
        let (t0, t1) = (host(diamond.tips.0), host(diamond.tips.1));
        let (y, w) = (t0.min(t1), t0.max(t1));
        diamond_case(b, piece, x, y, z, w)
    } else {
        let (u, v, w) = smallest_triangle_edge(piece, &tris);
        triangle_case(b, piece, u, v, w)
    }
}

/// Lexicographically smallest edge lying on a triangle, with the third vertex.
fn smallest_triangle_edge(piece: &Piece, tris: &[[VertexId; 3]]) -> (VertexId, VertexId, VertexId) {
    let host = |v: VertexId| piece.vertices[v];
    let mut best: Option<(VertexId, VertexId, VertexId)> = None;
    for t in tris {
        let [a, b, c] = t.map(host);
        for (u, v, w) in [(a, b, c), (a, c, b), (b, c, a)] {
            let (u, v) = (u.min(v), u.max(v));
            if best.is_none_or(|(bu, bv, _)| (u, v) < (bu, bv)) {
                best = Some((u, v, w));
            }
        }
    }
    best.expect("at least one triangle")
}

fn base_case(b: &mut Builder, piece: &Piece, local: &Graph, t: usize) -> Result<()> {
    let host = |v: VertexId| piece.vertices[v];
    if piece.vertices.len() <= b.size_cap {
        let cfg = SolverConfig {
            size_cap: b.size_cap,
            max_extras: None,
        };
        let (value, d) = solve_phylogeny(local, &cfg)?;
        let k = local.n();
        let added: Vec<VertexId> = (0..value).map(|_| b.fresh()).collect();
        let map = |x: usize| if x < k { host(x) } else { added[x - k] };
        let arcs = d.arcs().map(|(u, v)| (map(u), map(v))).collect();
        b.apply(
            "base_exact",
            json!({ "vertices": piece.vertices, "triangles": t, "value": value }),
            added,
            arcs,
            Vec::new(),
        );
    } else {
        let (arcs, extras) = forest_arcs(local);
        let k = local.n();
        let added: Vec<VertexId> = (0..extras).map(|_| b.fresh()).collect();
        let map = |x: usize| if x < k { host(x) } else { added[x - k] };
        let arcs = arcs.into_iter().map(|(u, v)| (map(u), map(v))).collect();
        b.apply(
            "base_triangle_free",
            json!({ "vertices": piece.vertices, "value": extras }),
            added,
            arcs,
            Vec::new(),
        );
    }
    Ok(())
}

/// No diamond: drop the triangle edge uv (third vertex w), build, repair.
fn triangle_case(b: &mut Builder, piece: &Piece, u: VertexId, v: VertexId, w: VertexId) -> Result<()> {
    build(b, &piece.without(&[(u, v)]))?;
    let removed = json!([u, v]);
    if let Some(z) = b.carer(u, w) {
        b.apply(
            "subcase_1_1",
            json!({ "removed_edge": removed, "cared_edge": [u, w], "carer": z }),
            vec![],
            vec![(v, z)],
            vec![],
        );
    } else if let Some(z) = b.carer(v, w) {
        b.apply(
            "subcase_1_1",
            json!({ "removed_edge": removed, "cared_edge": [v, w], "carer": z }),
            vec![],
            vec![(u, z)],
            vec![],
        );
    } else {
        let labels = b.digraph().acyclic_labeling()?;
        let arc = if labels.label(u) < labels.label(v) { (v, u) } else { (u, v) };
        assert!(
            labels.label(w) > labels.label(arc.1),
            "the third triangle vertex cannot have the least label"
        );
        b.apply(
            "subcase_1_2",
            json!({ "removed_edge": removed, "least": arc.1 }),
            vec![],
            vec![arc],
            vec![],
        );
    }
    Ok(())
}

/// Arcs out of z for the uncared branches, keyed on how x meets y and w.
fn uncared_arcs(b: &Builder, x: VertexId, y: VertexId, z: VertexId, w: VertexId) -> Result<(&'static str, Vec<(VertexId, VertexId)>)> {
    let yx = b.has_arc(y, x);
    let xy = b.has_arc(x, y);
    let xw = b.has_arc(x, w);
    let wx = b.has_arc(w, x);
    Ok(if yx && xw {
        ("y->x, x->w", vec![(z, x), (z, w)])
    } else if xy && wx {
        ("x->y, w->x", vec![(z, y), (z, x)])
    } else if xy && xw {
        ("x->y, x->w", vec![(z, y), (z, w)])
    } else {
        return Err(Error::HypothesisViolated(format!(
            "no arc pattern between {x} and {{{y}, {w}}} in the reduced digraph"
        )));
    })
}

/// Diamond on {x, y, z, w} with shared edge xz and tips y, w: drop the three
/// z-edges, build, repair.
fn diamond_case(b: &mut Builder, piece: &Piece, x: VertexId, y: VertexId, z: VertexId, w: VertexId) -> Result<()> {
    let removed = [(x, z), (y, z), (w, z)];
    let reduced = piece.without(&removed);
    let parts = reduced.components();
    let split = parts.len() > 1;
    for part in &parts {
        build(b, part)?;
    }
    let base_params = json!({
        "removed_edges": removed.map(|(p, q)| [p.min(q), p.max(q)]),
        "x": x, "y": y, "z": z, "w": w,
    });
    let cared_y = b.carer(x, y);
    let cared_w = b.carer(x, w);
    // swap the tips so that xy is the cared edge when exactly one is
    let (y, w, cared_y, cared_w) = if cared_y.is_none() && cared_w.is_some() {
        (w, y, cared_w, cared_y)
    } else {
        (y, w, cared_y, cared_w)
    };
    let mut params = base_params;
    params["split"] = json!(split);
    if split {
        match (cared_y, cared_w) {
            (Some(a), Some(c)) => {
                params["branch"] = json!("both cared");
                b.apply("subcase_2_1", params, vec![], vec![(z, a), (z, c)], vec![]);
            }
            (Some(c), None) => {
                let mut arcs = vec![(z, c)];
                if b.has_arc(x, w) {
                    arcs.push((z, w));
                } else if b.has_arc(w, x) {
                    arcs.push((z, x));
                }
                params["branch"] = json!("one cared");
                b.apply("subcase_2_1", params, vec![], arcs, vec![]);
            }
            _ => {
                let (pattern, arcs) = uncared_arcs(b, x, y, z, w)?;
                params["branch"] = json!(pattern);
                b.apply("subcase_2_1", params, vec![], arcs, vec![]);
            }
        }
    } else if let Some(a) = cared_y {
        let extra = b.fresh();
        params["branch"] = json!("one cared");
        b.apply(
            "subcase_2_2",
            params,
            vec![extra],
            vec![(z, a), (z, extra), (x, extra), (w, extra)],
            vec![],
        );
    } else {
        let (pattern, pattern_arcs) = uncared_arcs(b, x, y, z, w)?;
        let c = b.fresh();
        let incoming = b.in_neighbors(z);
        let removed_arcs: Vec<_> = incoming.iter().map(|&p| (p, z)).collect();
        let mut arcs: Vec<_> = incoming.iter().map(|&p| (p, c)).collect();
        arcs.push((z, c));
        arcs.extend(pattern_arcs);
        params["branch"] = json!(pattern);
        b.apply("subcase_2_2", params, vec![c], arcs, removed_arcs);
        assert!(b.in_neighbors(z).is_empty(), "rerouted vertex keeps an in-arc");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn triangle_free_cycle_and_tree() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let cert = construct_triangle_free(&c4).unwrap();
        assert_eq!(cert.extra_count, 1);
        assert_eq!(cert.digraph.arc_count(), 3 + 2);
        let tree = graph(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(construct_triangle_free(&tree).unwrap().extra_count, 0);
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(construct_triangle_free(&k3), Err(Error::NotTriangleFree));
        assert_eq!(construct_triangle_free(&graph(4, &[(0, 1), (2, 3)])), Err(Error::Disconnected));
    }

    #[test]
    fn gminus_caring_triangle() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let (cert, optimal) = construct_gminus_caring(&k3).unwrap();
        assert_eq!(cert.extra_count, 1);
        assert!(!optimal);
    }

    #[test]
    fn k4free_small() {
        let diamond = graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let trace = construct_k4free_upper(&diamond).unwrap();
        assert_eq!(trace.final_cert.extra_count, 0);
        assert_eq!(trace.replay(4).unwrap(), trace.final_cert.digraph);
    }

    #[test]
    fn k4free_forced_recursion() {
        // three triangles in a row sharing vertices; cap 0 forces every case.
        // m - n - t + 1 = 9 - 7 - 3 + 1 = 0
        let g = graph(
            7,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6)],
        );
        let trace = construct_k4free_upper_with_cap(&g, 0).unwrap();
        assert_eq!(trace.final_cert.extra_count, 0);
        assert_eq!(trace.replay(7).unwrap(), trace.final_cert.digraph);
        assert!(trace.steps.iter().any(|s| s.op == "subcase_1_1" || s.op == "subcase_1_2"));
    }
}
