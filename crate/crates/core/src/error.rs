use thiserror::Error;

/// Why a digraph fails to be a phylogeny digraph for a graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("NotAcyclic: the digraph contains a directed cycle")]
    NotAcyclic,
    #[error("ArcIntoBase: arc ({tail}, {head}) enters the base from outside")]
    ArcIntoBase { tail: usize, head: usize },
    /// `missing` is true when the edge is in the target graph but not in the
    /// phylogeny graph, false when the phylogeny graph has an edge the target lacks.
    #[error("NotInduced: edge {u}-{v} is {}", if *missing { "missing from P(D)" } else { "not in the target graph" })]
    NotInduced { u: usize, v: usize, missing: bool },
    #[error("BaseMismatch: {0}")]
    BaseMismatch(String),
}

impl CertificateError {
    /// Machine-readable reason tag.
    pub fn reason(&self) -> &'static str {
        match self {
            CertificateError::NotAcyclic => "NotAcyclic",
            CertificateError::ArcIntoBase { .. } => "ArcIntoBase",
            CertificateError::NotInduced { .. } => "NotInduced",
            CertificateError::BaseMismatch(_) => "BaseMismatch",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("digraph contains a directed cycle")]
    CyclicDigraph,
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("no phylogeny digraph with at most {0} extra vertices")]
    Infeasible(usize),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("condition ({clause}) violated: {detail}")]
    ConditionViolated { clause: String, detail: String },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("family index {l} exceeds the cap of {cap}")]
    CapExceeded { l: usize, cap: usize },
    #[error("graph contains a triangle")]
    NotTriangleFree,
    #[error("graph is disconnected")]
    Disconnected,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
