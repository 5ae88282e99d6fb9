//! DIMACS-style text formats.
//!
//! Signed graphs:
//!
//! ```text
//! c comment
//! p sg <n> <m>
//! e <u> <v> <+|->
//! ```
//!
//! Unsigned graphs use `p edge <n> <m>` and `e <u> <v>`. Labels are 1-indexed
//! in files and 0-indexed in memory.

use std::fmt::Write as _;

use super::{Adjacency, Graph, Sign, SignedGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Signed(SignedGraph),
    Unsigned(Graph),
}

impl ParsedGraph {
    /// Unsigned graphs are read as all-negative signed graphs.
    pub fn into_signed(self) -> SignedGraph {
        match self {
            ParsedGraph::Signed(g) => g,
            ParsedGraph::Unsigned(g) => g.all_negative(),
        }
    }

    pub fn underlying(&self) -> Graph {
        match self {
            ParsedGraph::Signed(g) => g.underlying(),
            ParsedGraph::Unsigned(g) => g.clone(),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_label(tok: Option<&str>, n: usize, line: usize) -> Result<Vertex> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing vertex label"))?;
    let label: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("bad vertex label `{tok}`")))?;
    if label == 0 || label > n {
        return Err(parse_err(line, format!("vertex label {label} outside 1..={n}")));
    }
    Ok(label - 1)
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(bool, usize, usize)> = None;
    let mut signed_edges = Vec::new();
    let mut plain_edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                let signed = match toks.next() {
                    Some("sg") => true,
                    Some("edge") => false,
                    other => {
                        return Err(parse_err(
                            line,
                            format!("unknown format `{}`", other.unwrap_or("")),
                        ))
                    }
                };
                let mut num = |what: &str| -> Result<usize> {
                    toks.next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err(line, format!("missing or invalid {what}")))
                };
                let n = num("vertex count")?;
                let m = num("edge count")?;
                header = Some((signed, n, m));
            }
            Some("e") => {
                let (signed, n, _) =
                    header.ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let u = parse_label(toks.next(), n, line)?;
                let v = parse_label(toks.next(), n, line)?;
                if signed {
                    let tok = toks
                        .next()
                        .ok_or_else(|| parse_err(line, "missing edge sign"))?;
                    let sign = match tok {
                        "+" => Sign::Positive,
                        "-" => Sign::Negative,
                        _ => return Err(parse_err(line, format!("bad sign `{tok}`"))),
                    };
                    signed_edges.push((line, u, v, sign));
                } else {
                    plain_edges.push((line, u, v));
                }
                if toks.next().is_some() {
                    return Err(parse_err(line, "trailing tokens"));
                }
            }
            Some(tok) => return Err(parse_err(line, format!("unknown line type `{tok}`"))),
            None => unreachable!(),
        }
    }

    let (signed, n, m) = header.ok_or_else(|| parse_err(0, "missing problem line"))?;
    let found = if signed { signed_edges.len() } else { plain_edges.len() };
    if found != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges but {found} were given"),
        ));
    }
    let locate = |line: usize, e: Error| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    };
    if signed {
        let mut g = SignedGraph::new(n);
        for (line, u, v, s) in signed_edges {
            g.add_edge(u, v, s).map_err(|e| locate(line, e))?;
        }
        Ok(ParsedGraph::Signed(g))
    } else {
        let mut g = Graph::new(n);
        for (line, u, v) in plain_edges {
            g.add_edge(u, v).map_err(|e| locate(line, e))?;
        }
        Ok(ParsedGraph::Unsigned(g))
    }
}

pub fn write_signed(g: &SignedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p sg {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v, s) in g.edges() {
        writeln!(out, "e {} {} {}", u + 1, v + 1, s).unwrap();
    }
    out
}

pub fn write_unsigned(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn signed_to_dot(g: &SignedGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  {};", v + 1).unwrap();
    }
    for (u, v, s) in g.edges() {
        let style = if s.is_negative() { ", style=dashed" } else { "" };
        writeln!(out, "  {} -- {} [sign=\"{}\"{}];", u + 1, v + 1, s, style).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn unsigned_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  {};", v + 1).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", u + 1, v + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
