//! Command implementations behind the `phylokit` binary.
//!
//! Every command writes its normal output to `out` and returns a
//! [`CliError`] whose [`exit_code`](CliError::exit_code) the binary uses.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use phylokit::enumerate::connected_graphs_up_to;
use phylokit::io::{digraph_to_dot, from_graph6, graph_to_dot, parse_digraph, parse_graph, write_digraph, write_graph};
use phylokit::phylo::{
    bounds_k4free, compute, difference_family, formula_dispatch, lower_bound_clique_cover, ComputeOptions,
};
use phylokit::structure::{edge_clique_cover_number_with_cap, DEFAULT_SIZE_CAP};
use phylokit::sweep::{run_sweep, SweepOptions, SweepRecord};
use phylokit::witness::{
    construct_gminus_caring, construct_k4free_upper, construct_triangle_free, figure, CatalogEntry, FIGURE_NAMES,
};
use phylokit::{census, validate_phylogeny_digraph, CertificateError, Estimate, Graph, PhyloCertificate, PhyloResult};

/// Largest order the sweep generator accepts.
pub const SWEEP_MAX_N: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: phylokit::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    InvalidCertificate(CertificateError),
    #[error("{0}")]
    Disagreement(String),
    #[error(transparent)]
    Core(#[from] phylokit::Error),
}

impl CliError {
    /// 1 invalid certificate, 2 unreadable or malformed input, 3 a size cap
    /// was hit, 4 a cross-check failed, 5 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidCertificate(_) => 1,
            CliError::Io { .. } | CliError::Input { .. } | CliError::Usage(_) => 2,
            CliError::Core(phylokit::Error::TooLarge { .. } | phylokit::Error::CapExceeded { .. }) => 3,
            CliError::Disagreement(_) => 4,
            CliError::Core(_) => 5,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "phylokit", version, about = "Phylogeny numbers of small graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// One extra vertex per non-tree edge (triangle-free graphs).
    TriangleFree,
    /// An extra vertex per component of the triangle-free part plus cared edges.
    Caring,
    /// Inductive construction reaching the upper K4-free bound.
    K4free,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phylogeny number of a graph, as JSON.
    Compute {
        file: PathBuf,
        /// Write an optimal phylogeny digraph here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Run the exact search past the size cap.
        #[arg(long)]
        force: bool,
        /// Largest kernel the exact search takes without --force.
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        size_cap: usize,
        /// Stop the exact search after this many extra vertices.
        #[arg(long)]
        max_extras: Option<usize>,
        /// Include elapsed_ms in the report (makes output vary between runs).
        #[arg(long)]
        timing: bool,
    },
    /// Check that a digraph is a phylogeny digraph for a graph.
    Verify { graph: PathBuf, digraph: PathBuf },
    /// Every applicable bound, as JSON.
    Bounds { file: PathBuf },
    /// Triangles, diamonds and G⁻ components, as JSON.
    Census { file: PathBuf },
    /// Build a witness with one of the constructions.
    Construct {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Construction,
        #[arg(long)]
        out: PathBuf,
        /// Write the step-by-step trace of the K4-free construction as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Cross-check every method on all small connected graphs, one JSON record per line.
    Sweep {
        /// Generate all connected graphs with up to this many vertices.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=SWEEP_MAX_N as u64))]
        max_n: Option<u64>,
        /// Only graphs that are connected, K4-free with edge-disjoint diamonds.
        #[arg(long)]
        only_k4free_scope: bool,
        /// Read graphs from a graph6 stream instead ("-" for stdin).
        #[arg(long)]
        graph6: Option<PathBuf>,
        /// Run the brute-force oracle on graphs with at most this many vertices.
        #[arg(long, default_value_t = 6)]
        oracle_max_n: usize,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        size_cap: usize,
    },
    /// Write G_l and check p - k + 1 = l.
    Family {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a named fixture as an edge list.
    Catalog {
        /// Omit to list the names.
        name: Option<String>,
    },
    /// Convert an edge-list file to Graphviz.
    ExportDot {
        input: PathBuf,
        /// Output path, "-" for stdout.
        out: PathBuf,
        /// Read the input as a digraph (implied by a "# base" line).
        #[arg(long)]
        digraph: bool,
    },
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Compute {
            file,
            witness,
            force,
            size_cap,
            max_extras,
            timing,
        } => {
            let opts = ComputeOptions {
                size_cap,
                force,
                witness: witness.is_some(),
                max_extras,
            };
            cmd_compute(&file, witness.as_deref(), &opts, timing, out)
        }
        Command::Verify { graph, digraph } => cmd_verify(&graph, &digraph, out).map(|_| ()),
        Command::Bounds { file } => cmd_bounds(&file, out),
        Command::Census { file } => cmd_census(&file, out),
        Command::Construct {
            file,
            method,
            out: path,
            trace,
        } => cmd_construct(&file, method, &path, trace.as_deref(), out),
        Command::Sweep {
            max_n,
            only_k4free_scope,
            graph6,
            oracle_max_n,
            size_cap,
        } => {
            let opts = SweepOptions {
                oracle_max_n,
                only_k4free_scope,
                size_cap,
            };
            cmd_sweep(max_n.map(|n| n as usize), graph6.as_deref(), &opts, out).map(|_| ())
        }
        Command::Family { l, out: dir } => cmd_family(l, &dir, out),
        Command::Catalog { name } => cmd_catalog(name.as_deref(), out),
        Command::ExportDot { input, out: path, digraph } => cmd_export_dot(&input, &path, digraph, out),
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn read_text(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|source| CliError::Io { path: "-".into(), source })?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })
}

fn write_text(path: &Path, text: &str, out: &mut dyn Write) -> CliResult {
    if path == Path::new("-") {
        return out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "-".into(), source });
    }
    fs::write(path, text).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> CliResult {
    let line = serde_json::to_string(value).expect("reports serialize");
    writeln!(out, "{line}").map_err(|source| CliError::Io { path: "-".into(), source })
}

pub fn read_graph(path: &Path) -> CliResult<Graph> {
    parse_graph(&read_text(path)?).map_err(|source| CliError::Input {
        path: display(path),
        source,
    })
}

/// Parses a digraph file; the base defaults to the first `base_len` vertices.
fn read_digraph(path: &Path, base_len: usize) -> CliResult<(phylokit::Digraph, Vec<usize>)> {
    let parsed = parse_digraph(&read_text(path)?).map_err(|source| CliError::Input {
        path: display(path),
        source,
    })?;
    let base = parsed.base.unwrap_or_else(|| (0..base_len.min(parsed.digraph.n())).collect());
    Ok((parsed.digraph, base))
}

#[derive(Serialize)]
struct GraphSize {
    n: usize,
    m: usize,
}

impl GraphSize {
    fn of(g: &Graph) -> Self {
        GraphSize { n: g.n(), m: g.m() }
    }
}

#[derive(Serialize)]
struct ResultJson<'a> {
    #[serde(flatten)]
    estimate: Estimate,
    method: &'a str,
}

impl<'a> From<&'a PhyloResult> for ResultJson<'a> {
    fn from(r: &'a PhyloResult) -> Self {
        ResultJson {
            estimate: r.estimate,
            method: &r.method,
        }
    }
}

#[derive(Serialize)]
struct ComputeReport<'a> {
    graph: GraphSize,
    #[serde(flatten)]
    result: ResultJson<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

/// The witness file text: the digraph with its base as a trailing comment.
pub fn witness_text(cert: &PhyloCertificate) -> String {
    let mut text = write_digraph(&cert.digraph, None);
    let base: Vec<_> = cert.base.iter().map(|b| b.to_string()).collect();
    if base.iter().enumerate().all(|(i, b)| *b == i.to_string()) {
        if !base.is_empty() {
            text.push_str(&format!("# base 0..{}\n", base.len() - 1));
        }
    } else {
        text.push_str(&format!("# base {}\n", base.join(",")));
    }
    text
}

pub fn cmd_compute(
    file: &Path,
    witness: Option<&Path>,
    opts: &ComputeOptions,
    timing: bool,
    out: &mut dyn Write,
) -> CliResult {
    let g = read_graph(file)?;
    let start = Instant::now();
    let result = compute(&g, opts)?;
    let elapsed = start.elapsed();
    let mut witness_file = None;
    if let Some(path) = witness {
        match &result.witness {
            Some(cert) => {
                write_text(path, &witness_text(cert), out)?;
                witness_file = Some(display(path));
            }
            None => eprintln!("no witness available for a {} result", result.kind()),
        }
    }
    emit(
        out,
        &ComputeReport {
            graph: GraphSize::of(&g),
            result: (&result).into(),
            witness_file,
            elapsed_ms: timing.then_some(elapsed.as_millis()),
        },
    )
}

/// Exit 0 iff the digraph certifies the graph. Without a "# base" line the
/// first n digraph vertices are the base.
pub fn cmd_verify(graph: &Path, digraph: &Path, out: &mut dyn Write) -> CliResult<PhyloCertificate> {
    let g = read_graph(graph)?;
    let (d, base) = read_digraph(digraph, g.n())?;
    let cert = validate_phylogeny_digraph(&d, &base, &g).map_err(CliError::InvalidCertificate)?;
    writeln!(out, "ok: phylogeny digraph with {} extra vertices", cert.extra_count)
        .map_err(|source| CliError::Io { path: "-".into(), source })?;
    Ok(cert)
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    graph: GraphSize,
    t: usize,
    d: usize,
    k4free_scope: bool,
    formula: ResultJson<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k4free_bounds: Option<ResultJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_cover: Option<ResultJson<'a>>,
}

pub fn cmd_bounds(file: &Path, out: &mut dyn Write) -> CliResult {
    let g = read_graph(file)?;
    let report = census(&g);
    let scope = report.in_k4free_scope(&g);
    let formula = formula_dispatch(&g);
    let k4free = if scope { Some(bounds_k4free(&g)?) } else { None };
    let cover = match lower_bound_clique_cover(&g) {
        Ok(r) => Some(r),
        Err(phylokit::Error::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    emit(
        out,
        &BoundsReport {
            graph: GraphSize::of(&g),
            t: report.t,
            d: report.d,
            k4free_scope: scope,
            formula: (&formula).into(),
            k4free_bounds: k4free.as_ref().map(Into::into),
            clique_cover: cover.as_ref().map(Into::into),
        },
    )
}

#[derive(Serialize)]
struct CensusReport {
    n: usize,
    m: usize,
    t: usize,
    d: usize,
    has_k4: bool,
    diamonds_edge_disjoint: bool,
    gminus_components: Vec<Vec<usize>>,
    theta_e: Option<usize>,
}

pub fn cmd_census(file: &Path, out: &mut dyn Write) -> CliResult {
    let g = read_graph(file)?;
    let report = census(&g);
    let theta_e = match edge_clique_cover_number_with_cap(&g, phylokit::phylo::bounds::CLIQUE_COVER_CAP) {
        Ok(v) => Some(v),
        Err(phylokit::Error::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    emit(
        out,
        &CensusReport {
            n: g.n(),
            m: g.m(),
            t: report.t,
            d: report.d,
            has_k4: report.has_k4,
            diamonds_edge_disjoint: report.diamonds_edge_disjoint,
            gminus_components: report.g_minus_components,
            theta_e,
        },
    )
}

#[derive(Serialize)]
struct ConstructReport<'a> {
    graph: GraphSize,
    construction: &'a str,
    extras: usize,
    witness_file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimal: Option<bool>,
}

pub fn cmd_construct(
    file: &Path,
    method: Construction,
    path: &Path,
    trace_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    if trace_path.is_some() && method != Construction::K4free {
        return Err(CliError::Usage("--trace applies only to --method k4free".into()));
    }
    let g = read_graph(file)?;
    let (cert, name, optimal) = match method {
        Construction::TriangleFree => (construct_triangle_free(&g)?, "triangle-free", None),
        Construction::Caring => {
            let (cert, optimal) = construct_gminus_caring(&g)?;
            (cert, "caring", Some(optimal))
        }
        Construction::K4free => {
            let trace = construct_k4free_upper(&g)?;
            if let Some(tp) = trace_path {
                let json = serde_json::to_string_pretty(&trace).expect("traces serialize");
                write_text(tp, &(json + "\n"), out)?;
            }
            (trace.final_cert, "k4free", None)
        }
    };
    write_text(path, &witness_text(&cert), out)?;
    emit(
        out,
        &ConstructReport {
            graph: GraphSize::of(&g),
            construction: name,
            extras: cert.extra_count,
            witness_file: display(path),
            optimal,
        },
    )
}

/// Graphs from a graph6 stream, one per line; a ">>graph6<<" prefix and
/// blank lines are ignored.
pub fn parse_graph6_stream(text: &str, source: &str) -> CliResult<Vec<Graph>> {
    text.lines()
        .map(|l| l.trim().trim_start_matches(">>graph6<<"))
        .filter(|l| !l.is_empty())
        .map(|l| {
            from_graph6(l).map_err(|source_err| CliError::Input {
                path: source.to_string(),
                source: source_err,
            })
        })
        .collect()
}

/// Streams one record per graph in canonical order, then fails with exit 4
/// on the first disagreement.
pub fn cmd_sweep(
    max_n: Option<usize>,
    graph6: Option<&Path>,
    opts: &SweepOptions,
    out: &mut dyn Write,
) -> CliResult<Vec<SweepRecord>> {
    let graphs = match (graph6, max_n) {
        (Some(path), _) => {
            let mut graphs = parse_graph6_stream(&read_text(path)?, &display(path))?;
            if let Some(n) = max_n {
                graphs.retain(|g| g.n() <= n);
            }
            let before = graphs.len();
            graphs.retain(Graph::is_connected);
            if graphs.len() < before {
                eprintln!("skipped {} disconnected graphs", before - graphs.len());
            }
            graphs
        }
        (None, Some(n)) => connected_graphs_up_to(n)?,
        (None, None) => return Err(CliError::Usage("sweep needs --max-n or --graph6".into())),
    };
    let mut records = run_sweep(&graphs, opts)?;
    records.sort_by(|a, b| (a.n, &a.graph6).cmp(&(b.n, &b.graph6)));
    for r in &records {
        emit(out, r)?;
    }
    let bad = records.iter().filter(|r| !r.ok).count();
    eprintln!("swept {} graphs, {bad} disagreements", records.len());
    if let Some(r) = records.iter().find(|r| !r.ok) {
        let g = from_graph6(&r.graph6)?;
        let detail = r.note.as_deref().unwrap_or("see the agreement flags");
        return Err(CliError::Disagreement(format!(
            "disagreement on {}: {detail}\n{}",
            r.graph6,
            write_graph(&g).trim_end()
        )));
    }
    Ok(records)
}

#[derive(Serialize)]
struct FamilyJson<'a> {
    l: usize,
    graph: GraphSize,
    graph_file: String,
    p: usize,
    p_method: &'a str,
    k: usize,
    difference: i64,
    identity_holds: bool,
}

pub fn cmd_family(l: usize, dir: &Path, out: &mut dyn Write) -> CliResult {
    let report = difference_family(l)?;
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: display(dir),
        source,
    })?;
    let path = dir.join(format!("G_{l}.txt"));
    write_text(&path, &write_graph(&report.graph), out)?;
    let p = report.p.value().expect("family p is exact");
    emit(
        out,
        &FamilyJson {
            l,
            graph: GraphSize::of(&report.graph),
            graph_file: display(&path),
            p,
            p_method: &report.p.method,
            k: report.k,
            difference: p as i64 - report.k as i64 + 1,
            identity_holds: report.identity_holds,
        },
    )?;
    if !report.identity_holds {
        return Err(CliError::Disagreement(format!("p - k + 1 != {l} for G_{l}")));
    }
    Ok(())
}

pub fn cmd_catalog(name: Option<&str>, out: &mut dyn Write) -> CliResult {
    let text = match name {
        None => FIGURE_NAMES.join("\n") + "\n",
        Some(name) => match figure(name).map_err(|source| CliError::Input {
            path: name.to_string(),
            source,
        })? {
            CatalogEntry::Graph(g) => write_graph(&g),
            CatalogEntry::Digraph { digraph, base } => {
                let extras = digraph.n() - base.len();
                witness_text(&PhyloCertificate {
                    digraph,
                    base,
                    extra_count: extras,
                })
            }
        },
    };
    write_text(Path::new("-"), &text, out)
}

pub fn cmd_export_dot(input: &Path, path: &Path, digraph: bool, out: &mut dyn Write) -> CliResult {
    let text = read_text(input)?;
    let has_base = text.lines().any(|l| l.trim().trim_start_matches('#').trim().starts_with("base"));
    let input_err = |source| CliError::Input {
        path: display(input),
        source,
    };
    let dot = if digraph || has_base {
        let parsed = parse_digraph(&text).map_err(input_err)?;
        let base = parsed.base.unwrap_or_else(|| (0..parsed.digraph.n()).collect());
        digraph_to_dot(&parsed.digraph, &base)
    } else {
        graph_to_dot(&parse_graph(&text).map_err(input_err)?)
    };
    write_text(path, &dot, out)
}

/// Sizes the global thread pool from PHYLOKIT_THREADS, if set.
pub fn configure_threads() -> CliResult {
    let Ok(value) = std::env::var("PHYLOKIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("PHYLOKIT_THREADS={value:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}
