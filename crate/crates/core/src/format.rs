//! Plain-text formats.
//!
//! Edge list: a header line `n k` (vertex count and claimed bandwidth
//! witness), then one `i j` line per edge with `1 <= i < j <= n`. `#` starts
//! a comment; blank lines are ignored.
//!
//! Subdivision: `roots u w`, then one whitespace-separated vertex sequence
//! per branch.

use std::fmt::Write as _;

use crate::builder::{RootedSubdivision, Step};
use crate::error::{Error, Result};
use crate::graph::{first_bandwidth_violation, LabeledGraph};
use crate::oracle::Certificate;

/// A parsed edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListFile {
    pub graph: LabeledGraph,
    pub k: usize,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_usize(field: &str, line: usize) -> Result<usize> {
    field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a non-negative integer, found {field:?}"),
    })
}

fn parse_pair(fields: &[&str], line: usize, what: &str) -> Result<(usize, usize)> {
    match fields {
        [a, b] => Ok((parse_usize(a, line)?, parse_usize(b, line)?)),
        _ => Err(Error::Parse {
            line,
            message: format!("expected `{what}`, found {} fields", fields.len()),
        }),
    }
}

/// Parses an edge list. With `check_witness`, the header's `k` must be a
/// valid bandwidth witness for the identity labelling.
pub fn parse_edge_list(text: &str, check_witness: bool) -> Result<EdgeListFile> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n k` header".into(),
    })?;
    let (n, k) = parse_pair(&header, hline, "n k")?;
    let mut edges = Vec::new();
    for (line, fields) in lines {
        let (i, j) = parse_pair(&fields, line, "i j")?;
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::Parse {
                line,
                message: format!("edge {i} {j} must satisfy 1 <= i < j <= {n}"),
            });
        }
        edges.push((i, j));
    }
    let graph = LabeledGraph::from_edges(n, edges)?;
    if check_witness {
        if let Some((u, v)) = first_bandwidth_violation(&graph, k) {
            return Err(Error::BandwidthViolated { u, v, k });
        }
    }
    Ok(EdgeListFile { graph, k })
}

pub fn write_edge_list(g: &LabeledGraph, k: usize) -> String {
    let mut out = format!("{} {}\n", g.n(), k);
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn join(seq: &[usize]) -> String {
    seq.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_subdivision(s: &RootedSubdivision) -> String {
    let mut out = format!("roots {} {}\n", s.roots.0, s.roots.1);
    for b in &s.branches {
        out.push_str(&join(b));
        out.push('\n');
    }
    out
}

pub fn parse_subdivision(text: &str) -> Result<RootedSubdivision> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `roots u w` header".into(),
    })?;
    let roots = match header.as_slice() {
        ["roots", rest @ ..] => parse_pair(rest, hline, "roots u w")?,
        _ => {
            return Err(Error::Parse {
                line: hline,
                message: "expected `roots u w`".into(),
            })
        }
    };
    let branches = lines
        .map(|(line, fields)| fields.iter().map(|f| parse_usize(f, line)).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Ok(RootedSubdivision { roots, branches })
}

pub fn write_cycle(cycle: &[usize]) -> String {
    format!("cycle {}\n", join(cycle))
}

pub fn write_path(path: &[usize]) -> String {
    format!("path {}\n", join(path))
}

pub fn write_steps(steps: &[Step]) -> String {
    steps.iter().map(|s| format!("{s}\n")).collect()
}

/// Kind line followed by the payload in the matching format.
pub fn write_certificate(c: &Certificate) -> String {
    let mut out = format!("{}\n", c.kind());
    match c {
        Certificate::SubdivisionFound(s) => out.push_str(&write_subdivision(s)),
        Certificate::HamiltonFound(cycle) => out.push_str(&write_cycle(cycle)),
        Certificate::Separator(cut) if cut.is_empty() => out.push_str("cut\n"),
        Certificate::Separator(cut) => {
            let _ = writeln!(out, "cut {}", join(cut));
        }
        Certificate::Exhausted => {}
    }
    out
}
