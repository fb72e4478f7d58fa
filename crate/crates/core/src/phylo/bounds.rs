//! Lower and upper bounds on the phylogeny number.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph, VertexId};
use crate::structure::{census, edge_clique_cover_number_with_cap, maximal_cliques};

use super::pipeline::exact_value;
use super::PhyloResult;

/// Vertex cap for the clique cover bound; the cover search is cheap on sparse graphs.
pub const CLIQUE_COVER_CAP: usize = 24;

pub const K4FREE_LOWER_ATTAINED: &str = "K4-free bounds, lower bound attained (G⁻ connected)";
pub const K4FREE_UPPER_ATTAINED: &str = "K4-free bounds, upper bound attained (G⁻ has 2t-d+1 components)";
pub const K4FREE_BOUNDS: &str = "K4-free bounds";

/// `[m - n - 2t + d + 1, m - n - t + 1]` for a connected K4-free graph whose
/// diamonds are pairwise edge-disjoint, upgraded to exact when an equality
/// condition on G⁻ holds.
pub fn bounds_k4free(g: &Graph) -> Result<PhyloResult> {
    let report = census(g);
    if !g.is_connected() {
        return Err(Error::HypothesisViolated("graph is disconnected".into()));
    }
    if report.has_k4 {
        return Err(Error::HypothesisViolated("graph contains K4".into()));
    }
    if !report.diamonds_edge_disjoint {
        return Err(Error::HypothesisViolated("two diamonds share an edge".into()));
    }
    let (m, n, t, d) = (g.m() as i64, g.n() as i64, report.t as i64, report.d as i64);
    let lower = (m - n - 2 * t + d + 1).max(0) as usize;
    let upper = ((m - n - t + 1).max(0) as usize).max(lower);
    let components = report.g_minus_components.len() as i64;
    Ok(if components == 1 {
        PhyloResult::exact(lower, K4FREE_LOWER_ATTAINED)
    } else if components == 2 * t - d + 1 {
        PhyloResult::exact(upper, K4FREE_UPPER_ATTAINED)
    } else {
        PhyloResult::interval(lower, upper, K4FREE_BOUNDS)
    })
}

/// `max(0, θ_e(G) - |V(G)| + 1)`.
pub fn lower_bound_clique_cover(g: &Graph) -> Result<PhyloResult> {
    let theta = edge_clique_cover_number_with_cap(g, CLIQUE_COVER_CAP)?;
    let value = (theta + 1).saturating_sub(g.n());
    Ok(PhyloResult::lower(value, "clique cover bound"))
}

fn fmt_clique(c: &[VertexId]) -> String {
    let items: Vec<_> = c.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn violated(clause: &str, detail: String) -> Error {
    Error::ConditionViolated {
        clause: clause.into(),
        detail,
    }
}

/// Checks the three decomposition conditions: (i) parts are pairwise
/// edge-disjoint, (ii) every maximal clique of a part is maximal in G,
/// (iii) a maximal clique of G inside a part and one not inside it share at
/// most one vertex.
pub fn verify_parts(g: &Graph, parts: &[Subgraph]) -> Result<()> {
    for part in parts {
        part.check_within(g)?;
    }
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate().skip(i + 1) {
            if let Some(&(u, v)) = a.edges.intersection(&b.edges).next() {
                return Err(violated("i", format!("parts {i} and {j} share edge {u}-{v}")));
            }
        }
    }
    let cliques = maximal_cliques(g);
    let maximal: BTreeSet<&Vec<VertexId>> = cliques.iter().collect();
    for (i, part) in parts.iter().enumerate() {
        let (h, map) = part.to_graph();
        for local in maximal_cliques(&h) {
            let clique: Vec<_> = local.iter().map(|&v| map[v]).collect();
            if !maximal.contains(&clique) {
                return Err(violated(
                    "ii",
                    format!("clique {} of part {i} is not maximal in the graph", fmt_clique(&clique)),
                ));
            }
        }
    }
    for (i, part) in parts.iter().enumerate() {
        let (inside, outside): (Vec<_>, Vec<_>) = cliques.iter().partition(|c| part.contains_clique(c));
        for a in &inside {
            for b in &outside {
                if a.iter().filter(|v| b.contains(v)).count() > 1 {
                    return Err(violated(
                        "iii",
                        format!(
                            "clique {} inside part {i} and clique {} outside it share two or more vertices",
                            fmt_clique(a),
                            fmt_clique(b)
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Sum of the parts' phylogeny numbers, a lower bound for p(G) when the
/// parts satisfy [`verify_parts`].
pub fn lower_bound_decomposition(g: &Graph, parts: &[Subgraph]) -> Result<PhyloResult> {
    verify_parts(g, parts)?;
    let mut total = 0;
    for part in parts {
        total += exact_value(&part.to_graph().0)?;
    }
    Ok(PhyloResult::lower(total, "decomposition bound"))
}

/// One triangle-free part: its cycle rank bounds p(G) from below.
pub fn lower_bound_triangle_free(g: &Graph, h: &Subgraph) -> Result<PhyloResult> {
    h.check_within(g)?;
    let (local, _) = h.to_graph();
    if census(&local).t > 0 {
        return Err(Error::NotTriangleFree);
    }
    verify_parts(g, std::slice::from_ref(h))?;
    let components = local.connected_components().len();
    let value = local.m() + components - local.n();
    Ok(PhyloResult::lower(value, "triangle-free subgraph bound"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn k4() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn clique_cover_bound() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(lower_bound_clique_cover(&c5).unwrap().lower_value(), Some(1));
        assert_eq!(lower_bound_clique_cover(&k4()).unwrap().lower_value(), Some(0));
    }

    #[test]
    fn k4free_hypotheses() {
        assert!(matches!(bounds_k4free(&k4()), Err(Error::HypothesisViolated(_))));
        let two = graph(4, &[(0, 1), (2, 3)]);
        assert!(matches!(bounds_k4free(&two), Err(Error::HypothesisViolated(_))));
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(bounds_k4free(&c5).unwrap().value(), Some(1));
    }

    #[test]
    fn parts_conditions() {
        // two triangles sharing an edge: splitting them breaks (ii)
        let diamond = graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let a = Subgraph::from_edges([(0, 1), (0, 2), (1, 2)]);
        let b = Subgraph::from_edges([(1, 3), (2, 3)]);
        assert!(matches!(
            verify_parts(&diamond, &[a.clone(), b]),
            Err(Error::ConditionViolated { clause, .. }) if clause == "ii"
        ));
        assert!(matches!(
            verify_parts(&diamond, &[a.clone(), a]),
            Err(Error::ConditionViolated { clause, .. }) if clause == "i"
        ));
        // an edge of a triangle on its own is not a maximal clique
        let paw = graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        let h = Subgraph::from_edges([(0, 1)]);
        assert!(verify_parts(&paw, &[h]).is_err());
        let h = Subgraph::from_edges([(2, 3)]);
        assert!(verify_parts(&paw, &[h]).is_ok());
    }

    #[test]
    fn components_as_parts() {
        let g = graph(9, &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (4, 8)]);
        let parts: Vec<_> = g.connected_components().into_iter().map(|c| Subgraph::induced(&g, c)).collect();
        assert_eq!(lower_bound_decomposition(&g, &parts).unwrap().lower_value(), Some(2));
    }
}
