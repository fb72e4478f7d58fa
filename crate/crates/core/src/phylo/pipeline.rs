//! The full computation: reductions, closed forms, bounds, exact search.

use std::collections::BTreeSet;

use crate::derived::validate_positional;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};
use crate::structure::{census, maximal_cliques, DEFAULT_SIZE_CAP};
use crate::witness::construct::{construct_gminus_caring, construct_k4free_upper, construct_triangle_free};

use super::bounds::{bounds_k4free, lower_bound_clique_cover, CLIQUE_COVER_CAP, K4FREE_LOWER_ATTAINED, K4FREE_UPPER_ATTAINED};
use super::formula::{connected_formula, TRIANGLE_FREE};
use super::reduce::reduce;
use super::solver::{solve_phylogeny, SolverConfig, ENGINE_MAX_VERTICES};
use super::PhyloResult;

#[derive(Clone, Debug)]
pub struct ComputeOptions {
    /// Largest kernel handed to the exact search without `force`.
    pub size_cap: usize,
    /// Run the exact search past the cap (up to the engine limit).
    pub force: bool,
    pub witness: bool,
    pub max_extras: Option<usize>,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            size_cap: DEFAULT_SIZE_CAP,
            force: false,
            witness: true,
            max_extras: None,
        }
    }
}

struct KernelOutcome {
    lower: usize,
    upper: usize,
    method: String,
    witness: Option<Digraph>,
}

impl KernelOutcome {
    fn exact(value: usize, method: impl Into<String>, witness: Option<Digraph>) -> Self {
        KernelOutcome {
            lower: value,
            upper: value,
            method: method.into(),
            witness,
        }
    }
}

/// p(G) through reductions, closed forms, the K4-free bounds and, for
/// kernels nothing else settles, the exact search.
pub fn compute(g: &Graph, opts: &ComputeOptions) -> Result<PhyloResult> {
    let reduction = reduce(g);
    let mut lower = 0;
    let mut upper = 0;
    let mut methods = BTreeSet::new();
    let mut witnesses = Vec::new();
    for (kernel, _) in &reduction.kernels {
        let outcome = resolve_kernel(kernel, opts)?;
        lower += outcome.lower;
        upper += outcome.upper;
        methods.insert(outcome.method);
        witnesses.push(outcome.witness);
    }
    let mut method = methods.into_iter().collect::<Vec<_>>().join(" + ");
    if reduction.kernels.is_empty() {
        method = "reductions".into();
    } else if !reduction.is_trivial() {
        method = format!("reductions, then {method}");
    }
    let mut result = PhyloResult::interval(lower, upper, method);
    if opts.witness && lower == upper && witnesses.iter().all(Option::is_some) {
        let digraphs: Vec<_> = witnesses.into_iter().flatten().collect();
        let d = reduction.reassemble(g.n(), &digraphs);
        let cert = validate_positional(&d, g).expect("reassembled digraph is a phylogeny digraph");
        debug_assert_eq!(cert.extra_count, lower);
        result = result.with_witness(cert);
    }
    Ok(result)
}

/// Exact p(G) without a witness, or `TooLarge` when nothing settles it.
pub(crate) fn exact_value(g: &Graph) -> Result<usize> {
    let opts = ComputeOptions {
        witness: false,
        ..ComputeOptions::default()
    };
    let result = compute(g, &opts)?;
    result.value().ok_or(Error::TooLarge {
        n: g.n(),
        cap: opts.size_cap,
    })
}

fn solver_witness(g: &Graph, opts: &ComputeOptions) -> Result<(usize, Digraph)> {
    let cfg = SolverConfig {
        size_cap: if opts.force { ENGINE_MAX_VERTICES } else { opts.size_cap },
        max_extras: opts.max_extras,
    };
    solve_phylogeny(g, &cfg)
}

fn within_cap(g: &Graph, opts: &ComputeOptions) -> bool {
    g.n() <= opts.size_cap.min(ENGINE_MAX_VERTICES) || (opts.force && g.n() <= ENGINE_MAX_VERTICES)
}

fn resolve_kernel(k: &Graph, opts: &ComputeOptions) -> Result<KernelOutcome> {
    if let Some((value, method)) = connected_formula(k) {
        let witness = if !opts.witness {
            None
        } else if method == TRIANGLE_FREE {
            Some(construct_triangle_free(k)?.digraph)
        } else if within_cap(k, opts) {
            let (found, d) = solver_witness(k, opts)?;
            debug_assert_eq!(found, value, "closed form disagrees with the exact search");
            (found == value).then_some(d)
        } else {
            let trace = construct_k4free_upper(k)?;
            (trace.final_cert.extra_count == value).then_some(trace.final_cert.digraph)
        };
        return Ok(KernelOutcome::exact(value, method, witness));
    }

    let report = census(k);
    let mut lower = 0;
    let mut upper = None;
    if report.in_k4free_scope(k) {
        let bounds = bounds_k4free(k)?;
        if let Some(value) = bounds.value() {
            let witness = if !opts.witness {
                None
            } else if bounds.method == K4FREE_LOWER_ATTAINED {
                let (cert, _) = construct_gminus_caring(k)?;
                (cert.extra_count == value).then_some(cert.digraph)
            } else {
                let trace = construct_k4free_upper(k)?;
                debug_assert!(bounds.method == K4FREE_UPPER_ATTAINED || trace.final_cert.extra_count >= value);
                (trace.final_cert.extra_count == value).then_some(trace.final_cert.digraph)
            };
            return Ok(KernelOutcome::exact(value, bounds.method, witness));
        }
        lower = bounds.lower_value().unwrap_or(0);
        upper = bounds.upper_value();
    }

    if within_cap(k, opts) {
        let (value, d) = solver_witness(k, opts)?;
        return Ok(KernelOutcome::exact(value, "exact search", opts.witness.then_some(d)));
    }
    if !opts.force {
        return Err(Error::TooLarge {
            n: k.n(),
            cap: opts.size_cap,
        });
    }
    // Past the engine limit: report what the bounds give.
    if k.n() <= CLIQUE_COVER_CAP {
        lower = lower.max(lower_bound_clique_cover(k)?.lower_value().unwrap_or(0));
    }
    // One extra per maximal clique always works.
    let cliques = maximal_cliques(k).into_iter().filter(|c| c.len() >= 2).count();
    let upper = upper.unwrap_or(cliques).min(cliques).max(lower);
    Ok(KernelOutcome {
        lower,
        upper,
        method: "bounds".into(),
        witness: None,
    })
}
