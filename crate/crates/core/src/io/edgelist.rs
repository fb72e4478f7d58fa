//! Edge-list format: a header line "n m", then m lines "u v". Lines starting
//! with '#' are comments; a digraph may carry a "# base a..b" comment naming
//! the (inclusive) range of vertices that stand for the graph's vertices.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{edge_key, Digraph, Graph, VertexId};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Raw {
    n: usize,
    pairs: Vec<(usize, VertexId, VertexId)>,
    base: Option<Vec<VertexId>>,
}

fn parse_pair(line_no: usize, text: &str) -> Result<(usize, usize)> {
    let fields: Vec<_> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(line_no, format!("expected two integers, found {:?}", text.trim())));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(line_no, format!("{s:?} is not a non-negative integer")))
    };
    Ok((num(fields[0])?, num(fields[1])?))
}

fn parse_base(line_no: usize, spec: &str) -> Result<Vec<VertexId>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = spec.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| parse_err(line_no, "bad base range"))?;
        let b: usize = b.trim().parse().map_err(|_| parse_err(line_no, "bad base range"))?;
        return Ok((a..=b).collect());
    }
    spec.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| parse_err(line_no, format!("bad base vertex {s:?}"))))
        .collect()
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    let mut base = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(spec) = comment.trim().strip_prefix("base") {
                base = Some(parse_base(line_no, spec)?);
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let pair = parse_pair(line_no, trimmed)?;
        match header {
            None => header = Some(pair),
            Some(_) => pairs.push((line_no, pair.0, pair.1)),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing \"n m\" header"))?;
    if pairs.len() != m {
        return Err(parse_err(0, format!("header declares {m} lines, found {}", pairs.len())));
    }
    for &(line_no, u, v) in &pairs {
        if u >= n || v >= n {
            return Err(parse_err(line_no, format!("vertex {} out of range 0..{n}", u.max(v))));
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at {u}")));
        }
    }
    Ok(Raw { n, pairs, base })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let raw = parse_raw(text)?;
    let mut seen = BTreeSet::new();
    for &(line_no, u, v) in &raw.pairs {
        if !seen.insert(edge_key(u, v)) {
            return Err(parse_err(line_no, format!("duplicate edge {u}-{v}")));
        }
    }
    let edges: Vec<_> = raw.pairs.iter().map(|&(_, u, v)| (u, v)).collect();
    Graph::from_edges(raw.n, &edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDigraph {
    pub digraph: Digraph,
    /// From a "# base" comment, if present.
    pub base: Option<Vec<VertexId>>,
}

pub fn parse_digraph(text: &str) -> Result<ParsedDigraph> {
    let raw = parse_raw(text)?;
    let mut seen = BTreeSet::new();
    for &(line_no, u, v) in &raw.pairs {
        if !seen.insert((u, v)) {
            return Err(parse_err(line_no, format!("duplicate arc {u}->{v}")));
        }
    }
    if let Some(base) = &raw.base {
        if let Some(&b) = base.iter().find(|&&b| b >= raw.n) {
            return Err(parse_err(0, format!("base vertex {b} out of range 0..{}", raw.n)));
        }
    }
    let arcs: Vec<_> = raw.pairs.iter().map(|&(_, u, v)| (u, v)).collect();
    Ok(ParsedDigraph {
        digraph: Digraph::from_arcs(raw.n, &arcs)?,
        base: raw.base,
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Writes the digraph; with `base_len`, appends "# base 0..base_len-1".
pub fn write_digraph(d: &Digraph, base_len: Option<usize>) -> String {
    let mut out = format!("{} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(k) = base_len {
        if k > 0 {
            let _ = writeln!(out, "# base 0..{}", k - 1);
        }
    }
    out
}
