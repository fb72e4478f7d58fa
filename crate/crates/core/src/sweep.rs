//! Cross-checking every method against the exact search on many graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derived::{validate_positional, PhyloCertificate};
use crate::enumerate::canonical_graph6;
use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph};
use crate::phylo::{
    bounds_k4free, formula_dispatch, lower_bound_clique_cover, oracle_phylogeny_number, phylogeny_number_exact_with,
    reduce, SolverConfig,
};
use crate::structure::{census, edge_clique_cover_number_with_cap};
use crate::witness::{construct_gminus_caring, construct_k4free_upper};

/// For an edge xy on no triangle: an arc (x, y) makes x the only base
/// in-neighbor of y, and a common out-neighbor of x and y is an extra vertex
/// whose only base in-neighbors are x and y. Returns the first violation.
pub fn check_edge_lemmas(g: &Graph, cert: &PhyloCertificate) -> Result<(), String> {
    let d = &cert.digraph;
    let mut pos = vec![None; d.n()];
    for (i, &b) in cert.base.iter().enumerate() {
        pos[b] = Some(i);
    }
    let report = census(g);
    let on_triangle = report.triangle_edges();
    for (x, y) in g.edges() {
        if on_triangle.contains(&edge_key(x, y)) {
            continue;
        }
        let (dx, dy) = (cert.base[x], cert.base[y]);
        for (tail, head) in [(dx, dy), (dy, dx)] {
            if d.has_arc(tail, head) {
                let others: Vec<_> = d
                    .in_neighbors(head)
                    .iter()
                    .filter(|&&w| w != tail && pos[w].is_some())
                    .collect();
                if !others.is_empty() {
                    return Err(format!("arc {tail}->{head} but {head} has other base in-neighbors {others:?}"));
                }
            }
        }
        for &z in d.out_neighbors(dx) {
            if !d.has_arc(dy, z) {
                continue;
            }
            if pos[z].is_some() {
                return Err(format!("common out-neighbor {z} of {dx} and {dy} is a base vertex"));
            }
            if d
                .in_neighbors(z)
                .iter()
                .any(|&w| w != dx && w != dy && pos[w].is_some())
            {
                return Err(format!("common out-neighbor {z} of {dx} and {dy} has other base in-neighbors"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// Run the brute-force oracle on graphs with at most this many vertices.
    pub oracle_max_n: usize,
    pub only_k4free_scope: bool,
    pub size_cap: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            oracle_max_n: 6,
            only_k4free_scope: false,
            size_cap: crate::structure::DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFlags {
    pub has_k4: bool,
    pub k4free_scope: bool,
    pub g_minus_components: usize,
}

/// Each field is `None` when the check does not apply to the graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub oracle: Option<bool>,
    pub formula: Option<bool>,
    pub sandwich: Option<bool>,
    pub lower_equality: Option<bool>,
    pub upper_equality: Option<bool>,
    pub clique_cover: bool,
    pub theta_formula: Option<bool>,
    pub reduction: bool,
    pub witness: bool,
    pub edge_lemmas: bool,
    pub constructions: Option<bool>,
}

impl Agreement {
    pub fn all(&self) -> bool {
        [
            self.oracle,
            self.formula,
            self.sandwich,
            self.lower_equality,
            self.upper_equality,
            self.theta_formula,
            self.constructions,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
            && self.clique_cover
            && self.reduction
            && self.witness
            && self.edge_lemmas
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub d: usize,
    pub flags: SweepFlags,
    pub exact_p: usize,
    pub formula_p: Option<usize>,
    pub oracle_p: Option<usize>,
    pub bounds: Option<(usize, usize)>,
    pub clique_cover_lower: usize,
    pub agreement: Agreement,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Runs every applicable check on one connected graph.
pub fn sweep_graph(g: &Graph, opts: &SweepOptions) -> Result<SweepRecord> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let report = census(g);
    let scope = report.in_k4free_scope(g);
    let cfg = SolverConfig {
        size_cap: opts.size_cap,
        max_extras: None,
    };
    let exact = phylogeny_number_exact_with(g, &cfg)?;
    let p = exact.value().expect("exact search is exact");
    let cert = exact.witness.expect("exact search has a witness");
    let mut agreement = Agreement::default();
    let mut notes = Vec::new();

    agreement.witness = cert.extra_count == p && validate_positional(&cert.digraph, g).is_ok();
    agreement.edge_lemmas = match check_edge_lemmas(g, &cert) {
        Ok(()) => true,
        Err(e) => {
            notes.push(e);
            false
        }
    };

    let mut oracle_p = None;
    if g.n() <= opts.oracle_max_n {
        agreement.oracle = Some(match oracle_phylogeny_number(g, 3) {
            Ok(r) => {
                oracle_p = Some(r);
                r == p
            }
            Err(Error::Infeasible(_)) => p > 3,
            Err(e) => return Err(e),
        });
    }

    let formula = formula_dispatch(g);
    let formula_p = formula.value();
    if report.t <= 2 {
        agreement.formula = Some(formula_p == Some(p));
    }

    let clique_cover_lower = lower_bound_clique_cover(g)?.lower_value().unwrap_or(0);
    agreement.clique_cover = clique_cover_lower <= p;

    let kernel_sum: usize = reduce(g)
        .kernels
        .iter()
        .map(|(k, _)| phylogeny_number_exact_with(k, &cfg).map(|r| r.value().unwrap_or(usize::MAX)))
        .sum::<Result<usize>>()?;
    agreement.reduction = kernel_sum == p;

    let mut bounds = None;
    if scope {
        let (m, n, t, d) = (g.m() as i64, g.n() as i64, report.t as i64, report.d as i64);
        let raw_lower = m - n - 2 * t + d + 1;
        let raw_upper = m - n - t + 1;
        let pi = p as i64;
        let b = bounds_k4free(g)?;
        bounds = Some((b.lower_value().unwrap_or(0), b.upper_value().unwrap_or(0)));
        agreement.sandwich = Some(raw_lower <= pi && pi <= raw_upper);
        let comps = report.g_minus_components.len() as i64;
        if comps == 1 {
            agreement.lower_equality = Some(pi == raw_lower);
        }
        if comps == 2 * t - d + 1 {
            agreement.upper_equality = Some(pi == raw_upper);
        }
        let theta = edge_clique_cover_number_with_cap(g, crate::phylo::bounds::CLIQUE_COVER_CAP)? as i64;
        agreement.theta_formula = Some(theta == m - 2 * t + d);

        let (caring, optimal) = construct_gminus_caring(g)?;
        let trace = construct_k4free_upper(g)?;
        let upper_count = trace.final_cert.extra_count as i64;
        let caring_ok = caring.extra_count as i64 == m - n - 2 * t + d + comps
            && (!optimal || caring.extra_count == p)
            && check_edge_lemmas(g, &caring).is_ok();
        let upper_ok = upper_count <= raw_upper
            && (comps != 2 * t - d + 1 || upper_count == raw_upper)
            && trace.replay(g.n()).ok().as_ref() == Some(&trace.final_cert.digraph);
        if !caring_ok {
            notes.push("G⁻-plus-caring construction count mismatch".into());
        }
        if !upper_ok {
            notes.push(format!("inductive construction used {upper_count} extras"));
        }
        agreement.constructions = Some(caring_ok && upper_ok);
    }

    let ok = agreement.all();
    Ok(SweepRecord {
        graph6: canonical_graph6(g)?,
        n: g.n(),
        m: g.m(),
        t: report.t,
        d: report.d,
        flags: SweepFlags {
            has_k4: report.has_k4,
            k4free_scope: scope,
            g_minus_components: report.g_minus_components.len(),
        },
        exact_p: p,
        formula_p,
        oracle_p,
        bounds,
        clique_cover_lower,
        agreement,
        ok,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// Sweeps the graphs in parallel; records come back in input order.
pub fn run_sweep(graphs: &[Graph], opts: &SweepOptions) -> Result<Vec<SweepRecord>> {
    let selected: Vec<&Graph> = graphs
        .iter()
        .filter(|g| !opts.only_k4free_scope || census(g).in_k4free_scope(g))
        .collect();
    selected.par_iter().map(|g| sweep_graph(g, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::connected_graphs_up_to;

    #[test]
    fn small_sweep_agrees() {
        let graphs = connected_graphs_up_to(4).unwrap();
        let records = run_sweep(&graphs, &SweepOptions::default()).unwrap();
        assert_eq!(records.len(), 1 + 1 + 2 + 6);
        for r in &records {
            assert!(r.ok, "{r:?}");
        }
        let k3 = records.iter().find(|r| r.n == 3 && r.m == 3).unwrap();
        assert_eq!((k3.exact_p, k3.formula_p), (0, Some(0)));
    }
}
