//! Closed forms for graphs with at most two triangles.

use std::collections::BTreeSet;

use crate::graph::{Graph, VertexId};
use crate::structure::census;

use super::PhyloResult;

pub const TRIANGLE_FREE: &str = "triangle-free formula";
pub const ONE_TRIANGLE: &str = "one-triangle formula";
pub const TWO_TRIANGLES_SHARED_EDGE: &str = "two-triangle shared-edge formula";
pub const TWO_TRIANGLES_EDGE_DISJOINT: &str = "two-triangle edge-disjoint formula";

/// Sum of the per-component closed forms, or `none` when some component
/// has three or more triangles (or a formula goes negative).
pub fn formula_dispatch(g: &Graph) -> PhyloResult {
    let mut total = 0;
    let mut methods = BTreeSet::new();
    for comp in g.connected_components() {
        let (h, _) = g.induced_subgraph(&comp);
        match connected_formula(&h) {
            Some((value, method)) => {
                total += value;
                methods.insert(method);
            }
            None => return PhyloResult::none(),
        }
    }
    if methods.is_empty() {
        methods.insert(TRIANGLE_FREE);
    }
    PhyloResult::exact(total, methods.into_iter().collect::<Vec<_>>().join(" + "))
}

/// The closed form for a connected graph, with its name.
pub(crate) fn connected_formula(g: &Graph) -> Option<(usize, &'static str)> {
    let report = census(g);
    let m = g.m() as i64;
    let n = g.n() as i64;
    let components = report.g_minus_components.len();
    let comp_of = |v: VertexId| report.g_minus_components.iter().position(|c| c.contains(&v));
    let (value, method) = match report.triangle_list.as_slice() {
        [] => (m - n + 1, TRIANGLE_FREE),
        [_] => (if components == 3 { m - n } else { m - n - 1 }, ONE_TRIANGLE),
        [a, b] => {
            let shared: Vec<_> = a.iter().filter(|v| b.contains(v)).copied().collect();
            if shared.len() == 2 {
                let x = *a.iter().find(|v| !shared.contains(v))?;
                let y = *b.iter().find(|v| !shared.contains(v))?;
                let value = if components == 4 || (components == 3 && comp_of(x) == comp_of(y)) {
                    m - n - 1
                } else {
                    m - n - 2
                };
                (value, TWO_TRIANGLES_SHARED_EDGE)
            } else {
                let value = match components {
                    5 => m - n - 1,
                    4 => m - n - 2,
                    3 if two_per_component(a, b, &comp_of) || whole_triangle_in_one(a, b, &comp_of) => m - n - 2,
                    _ => m - n - 3,
                };
                (value, TWO_TRIANGLES_EDGE_DISJOINT)
            }
        }
        _ => return None,
    };
    (value >= 0).then_some((value as usize, method))
}

/// Every G⁻ component meeting the triangles holds exactly two of their six
/// vertices, a vertex shared by both triangles counting twice.
fn two_per_component(a: &[VertexId; 3], b: &[VertexId; 3], comp_of: &impl Fn(VertexId) -> Option<usize>) -> bool {
    let mut counts = std::collections::BTreeMap::new();
    for &v in a.iter().chain(b) {
        *counts.entry(comp_of(v)).or_insert(0) += 1;
    }
    counts.values().all(|&c| c == 2)
}

fn whole_triangle_in_one(a: &[VertexId; 3], b: &[VertexId; 3], comp_of: &impl Fn(VertexId) -> Option<usize>) -> bool {
    [a, b]
        .iter()
        .any(|t| comp_of(t[0]) == comp_of(t[1]) && comp_of(t[1]) == comp_of(t[2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn trees_and_cycles() {
        let path = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(formula_dispatch(&path).value(), Some(0));
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let r = formula_dispatch(&c5);
        assert_eq!(r.value(), Some(1));
        assert_eq!(r.method, TRIANGLE_FREE);
    }

    #[test]
    fn paw_and_diamond() {
        let paw = graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        let r = formula_dispatch(&paw);
        assert_eq!((r.value(), r.method.as_str()), (Some(0), ONE_TRIANGLE));
        let diamond = graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let r = formula_dispatch(&diamond);
        assert_eq!((r.value(), r.method.as_str()), (Some(0), TWO_TRIANGLES_SHARED_EDGE));
    }

    #[test]
    fn components_sum() {
        // C4 and C5 side by side
        let g = graph(
            9,
            &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (4, 8)],
        );
        assert_eq!(formula_dispatch(&g).value(), Some(2));
    }

    #[test]
    fn bowtie_counts_shared_vertex_twice() {
        // triangles 2-5-6 and 3-4-6 meet at 6, which is alone in G⁻
        let g = graph(
            7,
            &[(0, 4), (0, 5), (1, 2), (1, 3), (2, 5), (2, 6), (3, 4), (3, 6), (4, 6), (5, 6)],
        );
        assert_eq!(formula_dispatch(&g).value(), Some(1));
    }

    #[test]
    fn inapplicable() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(formula_dispatch(&k4).kind(), "none");
    }
}
