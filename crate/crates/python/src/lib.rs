//! Python bindings: graphs, digraphs, certificates and the main computations.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use phylokit::phylo::{self, ComputeOptions, Estimate};
use phylokit::{io, structure, witness};

create_exception!(phylokit_py, PhylokitError, PyValueError);
create_exception!(phylokit_py, InvalidCertificate, PhylokitError);
create_exception!(phylokit_py, TooLarge, PhylokitError);

fn to_py(e: phylokit::Error) -> PyErr {
    match e {
        phylokit::Error::Certificate(c) => InvalidCertificate::new_err(c.to_string()),
        e @ (phylokit::Error::TooLarge { .. } | phylokit::Error::CapExceeded { .. }) => TooLarge::new_err(e.to_string()),
        e => PhylokitError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Graph", module = "phylokit_py", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct PyGraph(phylokit::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        phylokit::Graph::from_edges(n, &edges).map(PyGraph).map_err(to_py)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        io::from_graph6(text).map(PyGraph).map_err(to_py)
    }

    #[staticmethod]
    fn from_edgelist(text: &str) -> PyResult<Self> {
        io::parse_graph(text).map(PyGraph).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edge_list()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn graph6(&self) -> String {
        io::to_graph6(&self.0)
    }

    /// graph6 of the canonical relabeling; equal for isomorphic graphs.
    fn canonical_graph6(&self) -> PyResult<String> {
        phylokit::enumerate::canonical_graph6(&self.0).map_err(to_py)
    }

    fn to_edgelist(&self) -> String {
        io::write_graph(&self.0)
    }

    fn to_dot(&self) -> String {
        io::graph_to_dot(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.m())
    }
}

#[pyclass(name = "Digraph", module = "phylokit_py", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct PyDigraph(phylokit::Digraph);

#[pymethods]
impl PyDigraph {
    #[new]
    #[pyo3(signature = (n, arcs=Vec::new()))]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        phylokit::Digraph::from_arcs(n, &arcs).map(PyDigraph).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.0.arc_list()
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    fn in_neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.0.n() {
            return Err(PhylokitError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.0.in_neighbors(v).to_vec())
    }

    /// The moral graph: arcs plus every pair of vertices sharing an out-neighbor.
    fn phylogeny_graph(&self) -> PyResult<PyGraph> {
        phylokit::phylogeny_graph(&self.0).map(PyGraph).map_err(to_py)
    }

    fn competition_graph(&self) -> PyGraph {
        PyGraph(phylokit::competition_graph(&self.0))
    }

    #[pyo3(signature = (base=None))]
    fn to_dot(&self, base: Option<Vec<usize>>) -> String {
        let base = base.unwrap_or_else(|| (0..self.0.n()).collect());
        io::digraph_to_dot(&self.0, &base)
    }

    fn __repr__(&self) -> String {
        format!("Digraph(n={}, arcs={})", self.0.n(), self.0.arc_count())
    }
}

/// A digraph checked to be a phylogeny digraph; `base[i]` plays graph vertex `i`.
#[pyclass(name = "Certificate", module = "phylokit_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCertificate(phylokit::PhyloCertificate);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn digraph(&self) -> PyDigraph {
        PyDigraph(self.0.digraph.clone())
    }

    #[getter]
    fn base(&self) -> Vec<usize> {
        self.0.base.clone()
    }

    #[getter]
    fn extra_count(&self) -> usize {
        self.0.extra_count
    }

    /// Edge-list text with a trailing "# base" line.
    fn to_edgelist(&self) -> String {
        let mut text = io::write_digraph(&self.0.digraph, None);
        let base: Vec<_> = self.0.base.iter().map(ToString::to_string).collect();
        if !base.is_empty() {
            text.push_str(&format!("# base {}\n", base.join(",")));
        }
        text
    }

    fn __repr__(&self) -> String {
        format!("Certificate(extra_count={})", self.0.extra_count)
    }
}

fn result_dict<'py>(py: Python<'py>, r: &phylo::PhyloResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("kind", r.kind())?;
    match r.estimate {
        Estimate::Exact { value } | Estimate::LowerBound { value } | Estimate::UpperBound { value } => {
            d.set_item("value", value)?
        }
        Estimate::Interval { lower, upper } => {
            d.set_item("lower", lower)?;
            d.set_item("upper", upper)?;
        }
        Estimate::None => {}
    }
    d.set_item("method", &r.method)?;
    if let Some(w) = &r.witness {
        d.set_item("witness", PyCertificate(w.clone()))?;
    }
    Ok(d)
}

/// Checks `digraph` against `graph`; raises InvalidCertificate naming the clause.
#[pyfunction]
#[pyo3(signature = (digraph, graph, base=None))]
fn validate(digraph: &PyDigraph, graph: &PyGraph, base: Option<Vec<usize>>) -> PyResult<PyCertificate> {
    let base = base.unwrap_or_else(|| (0..graph.0.n()).collect());
    phylokit::validate_phylogeny_digraph(&digraph.0, &base, &graph.0)
        .map(PyCertificate)
        .map_err(|e| InvalidCertificate::new_err(e.to_string()))
}

/// Reductions, closed forms, bounds and exact search, as a dict.
#[pyfunction]
#[pyo3(signature = (graph, force=false, size_cap=structure::DEFAULT_SIZE_CAP, witness=true))]
fn phylogeny_number<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    force: bool,
    size_cap: usize,
    witness: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = ComputeOptions {
        size_cap,
        force,
        witness,
        max_extras: None,
    };
    let r = py.detach(|| phylo::compute(&graph.0, &opts)).map_err(to_py)?;
    result_dict(py, &r)
}

#[pyfunction]
fn phylogeny_number_exact<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let r = py.detach(|| phylo::phylogeny_number_exact(&graph.0)).map_err(to_py)?;
    result_dict(py, &r)
}

#[pyfunction]
fn competition_number(py: Python<'_>, graph: &PyGraph) -> PyResult<usize> {
    py.detach(|| phylo::competition_number_exact(&graph.0)).map_err(to_py)
}

/// Brute force over vertex orderings, for tiny graphs; raises if more than
/// `r_max` extra vertices are needed.
#[pyfunction]
#[pyo3(signature = (graph, r_max=3))]
fn oracle_phylogeny_number(py: Python<'_>, graph: &PyGraph, r_max: usize) -> PyResult<usize> {
    py.detach(|| phylo::oracle_phylogeny_number(&graph.0, r_max)).map_err(to_py)
}

#[pyfunction]
fn formula<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    result_dict(py, &phylo::formula_dispatch(&graph.0))
}

#[pyfunction]
fn bounds_k4free<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let r = phylo::bounds_k4free(&graph.0).map_err(to_py)?;
    result_dict(py, &r)
}

#[pyfunction]
fn census<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let report = phylokit::census(&graph.0);
    let d = PyDict::new(py);
    d.set_item("t", report.t)?;
    d.set_item("d", report.d)?;
    d.set_item("triangles", report.triangle_list.clone())?;
    d.set_item("has_k4", report.has_k4)?;
    d.set_item("diamonds_edge_disjoint", report.diamonds_edge_disjoint)?;
    d.set_item("gminus_components", report.g_minus_components.clone())?;
    d.set_item("k4free_scope", report.in_k4free_scope(&graph.0))?;
    Ok(d)
}

#[pyfunction]
fn edge_clique_cover_number(graph: &PyGraph) -> PyResult<usize> {
    structure::edge_clique_cover_number(&graph.0).map_err(to_py)
}

#[pyfunction]
fn maximal_cliques(graph: &PyGraph) -> Vec<Vec<usize>> {
    structure::maximal_cliques(&graph.0)
}

/// Restricts a phylogeny digraph of `graph` to the subgraph on `edges`
/// (plus any listed `vertices`).
#[pyfunction]
#[pyo3(signature = (digraph, graph, edges, vertices=Vec::new(), base=None))]
fn restriction_digraph(
    digraph: &PyDigraph,
    graph: &PyGraph,
    edges: Vec<(usize, usize)>,
    vertices: Vec<usize>,
    base: Option<Vec<usize>>,
) -> PyResult<PyCertificate> {
    let base = base.unwrap_or_else(|| (0..graph.0.n()).collect());
    let mut h = phylokit::Subgraph::from_edges(edges);
    h.vertices.extend(vertices);
    witness::restriction_digraph(&digraph.0, &base, &graph.0, &h)
        .map(PyCertificate)
        .map_err(to_py)
}

/// Builds a witness: "triangle-free", "caring" or "k4free".
#[pyfunction]
fn construct(graph: &PyGraph, method: &str) -> PyResult<PyCertificate> {
    let cert = match method {
        "triangle-free" => witness::construct_triangle_free(&graph.0),
        "caring" => witness::construct_gminus_caring(&graph.0).map(|(c, _)| c),
        "k4free" => witness::construct_k4free_upper(&graph.0).map(|t| t.final_cert),
        other => return Err(PhylokitError::new_err(format!("unknown construction {other:?}"))),
    };
    cert.map(PyCertificate).map_err(to_py)
}

/// A named fixture: a Graph, or a (Digraph, base) pair.
#[pyfunction]
fn figure<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    match witness::figure(name).map_err(to_py)? {
        witness::CatalogEntry::Graph(g) => Ok(Bound::new(py, PyGraph(g))?.into_any()),
        witness::CatalogEntry::Digraph { digraph, base } => {
            Ok((PyDigraph(digraph), base).into_pyobject(py)?.into_any())
        }
    }
}

#[pyfunction]
fn family<'py>(py: Python<'py>, l: usize) -> PyResult<Bound<'py, PyDict>> {
    let report = py.detach(|| phylo::difference_family(l)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("l", report.l)?;
    d.set_item("graph", PyGraph(report.graph))?;
    d.set_item("p", report.p.value())?;
    d.set_item("k", report.k)?;
    d.set_item("identity_holds", report.identity_holds)?;
    Ok(d)
}

/// All connected graphs on exactly `n` vertices up to isomorphism.
#[pyfunction]
fn connected_graphs(py: Python<'_>, n: usize) -> PyResult<Vec<PyGraph>> {
    let graphs = py.detach(|| phylokit::enumerate::connected_graphs(n)).map_err(to_py)?;
    Ok(graphs.into_iter().map(PyGraph).collect())
}

#[pymodule]
fn phylokit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("PhylokitError", py.get_type::<PhylokitError>())?;
    m.add("InvalidCertificate", py.get_type::<InvalidCertificate>())?;
    m.add("TooLarge", py.get_type::<TooLarge>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDigraph>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(phylogeny_number, m)?)?;
    m.add_function(wrap_pyfunction!(phylogeny_number_exact, m)?)?;
    m.add_function(wrap_pyfunction!(competition_number, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_phylogeny_number, m)?)?;
    m.add_function(wrap_pyfunction!(formula, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_k4free, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(edge_clique_cover_number, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_cliques, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_digraph, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(figure, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(connected_graphs, m)?)?;
    Ok(())
}
