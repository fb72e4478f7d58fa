//! Phylogeny numbers: exact search, closed forms, bounds and reductions.

pub mod bounds;
pub mod competition;
pub mod family;
pub mod formula;
pub mod oracle;
pub mod pipeline;
pub mod reduce;
pub mod solver;

use serde::{Deserialize, Serialize};

use crate::derived::{validate_positional, PhyloCertificate};
use crate::error::Result;
use crate::graph::Graph;

pub use bounds::{
    bounds_k4free, lower_bound_clique_cover, lower_bound_decomposition, lower_bound_triangle_free, verify_parts,
};
pub use competition::{competition_number_exact, competition_number_with_witness};
pub use family::{difference_family, family_graph, FamilyReport, FAMILY_CAP};
pub use formula::formula_dispatch;
pub use oracle::oracle_phylogeny_number;
pub use pipeline::{compute, ComputeOptions};
pub use reduce::{decompose_equal, reduce, Reduction, ReductionStep};
pub use solver::{SolverConfig, ENGINE_MAX_VERTICES};

/// What is known about a phylogeny number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Estimate {
    Exact { value: usize },
    LowerBound { value: usize },
    UpperBound { value: usize },
    Interval { lower: usize, upper: usize },
    /// No applicable method.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloResult {
    pub estimate: Estimate,
    pub method: String,
    pub witness: Option<PhyloCertificate>,
}

impl PhyloResult {
    pub fn exact(value: usize, method: impl Into<String>) -> Self {
        PhyloResult {
            estimate: Estimate::Exact { value },
            method: method.into(),
            witness: None,
        }
    }

    pub fn lower(value: usize, method: impl Into<String>) -> Self {
        PhyloResult {
            estimate: Estimate::LowerBound { value },
            method: method.into(),
            witness: None,
        }
    }

    /// Collapses to `Exact` when the ends meet.
    pub fn interval(lower: usize, upper: usize, method: impl Into<String>) -> Self {
        debug_assert!(lower <= upper);
        let estimate = if lower == upper {
            Estimate::Exact { value: lower }
        } else {
            Estimate::Interval { lower, upper }
        };
        PhyloResult {
            estimate,
            method: method.into(),
            witness: None,
        }
    }

    pub fn none() -> Self {
        PhyloResult {
            estimate: Estimate::None,
            method: "none".into(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: PhyloCertificate) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn kind(&self) -> &'static str {
        match self.estimate {
            Estimate::Exact { .. } => "exact",
            Estimate::LowerBound { .. } => "lower_bound",
            Estimate::UpperBound { .. } => "upper_bound",
            Estimate::Interval { .. } => "interval",
            Estimate::None => "none",
        }
    }

    /// The value of an exact result.
    pub fn value(&self) -> Option<usize> {
        match self.estimate {
            Estimate::Exact { value } => Some(value),
            _ => None,
        }
    }

    pub fn lower_value(&self) -> Option<usize> {
        match self.estimate {
            Estimate::Exact { value } | Estimate::LowerBound { value } => Some(value),
            Estimate::Interval { lower, .. } => Some(lower),
            _ => None,
        }
    }

    pub fn upper_value(&self) -> Option<usize> {
        match self.estimate {
            Estimate::Exact { value } | Estimate::UpperBound { value } => Some(value),
            Estimate::Interval { upper, .. } => Some(upper),
            _ => None,
        }
    }
}

/// Exact phylogeny number by head-assignment search, with an optimal witness.
pub fn phylogeny_number_exact(g: &Graph) -> Result<PhyloResult> {
    phylogeny_number_exact_with(g, &SolverConfig::default())
}

pub fn phylogeny_number_exact_with(g: &Graph, cfg: &SolverConfig) -> Result<PhyloResult> {
    let (value, digraph) = solver::solve_phylogeny(g, cfg)?;
    let cert = validate_positional(&digraph, g).expect("solver witness is a phylogeny digraph");
    Ok(PhyloResult::exact(value, "exact search").with_witness(cert))
}
