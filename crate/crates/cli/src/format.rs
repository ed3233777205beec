//! Hypergraph file formats.
//!
//! Text form: a header `k n m`, then one edge per line as whitespace-separated
//! 0-based vertex indices. `#` starts a comment; blank lines are ignored.
//!
//! ```text
//! # loose path
//! 3 5 2
//! 0 1 2
//! 2 3 4
//! ```
//!
//! Structured form: `{"k": 3, "n": 5, "edges": [[0, 1, 2], [2, 3, 4]]}`.
//! Input starting with `{` is read as the structured form.

use std::fmt::Write as _;

use hyperentropy::hypergraph::{Hypergraph, HypergraphError};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: HypergraphError },
    #[error("{0}")]
    InvalidStructure(HypergraphError),
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::Invalid { source, .. } | ParseError::InvalidStructure(source) => match source {
                HypergraphError::InvalidUniformity(_) => "InvalidUniformity",
                HypergraphError::EmptyEdgeList => "EmptyEdgeList",
                HypergraphError::NonUniformEdge { .. } => "NonUniformEdge",
                HypergraphError::DuplicateEdge { .. } => "DuplicateEdge",
                HypergraphError::VertexOutOfRange { .. } => "VertexOutOfRange",
                HypergraphError::IsolatedVertex(_) => "IsolatedVertex",
            },
        }
    }

    /// 1-based line of the offending input, when known.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Invalid { line, .. } => Some(*line),
            ParseError::InvalidStructure(_) => None,
        }
    }

    pub fn column(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { column, .. } => Some(*column),
            _ => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Structured {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

pub fn parse(input: &str) -> Result<Hypergraph, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_structured(input)
    } else {
        parse_text(input)
    }
}

fn parse_structured(input: &str) -> Result<Hypergraph, ParseError> {
    let s: Structured = serde_json::from_str(input).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Hypergraph::new(s.k, s.n, s.edges).map_err(ParseError::InvalidStructure)
}

/// Non-comment tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((body[..s].chars().count() + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn number(line: usize, (column, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Syntax { line, column, message: format!("expected {what}, found `{tok}`") })
}

fn parse_text(input: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, tokens(l))).filter(|(_, t)| !t.is_empty());

    let (header_line, header) =
        lines.next().ok_or(ParseError::Syntax { line: 1, column: 1, message: "missing header `k n m`".into() })?;
    if header.len() != 3 {
        let column = header.get(3).map_or(header.last().map_or(1, |t| t.0), |t| t.0);
        return Err(ParseError::Syntax {
            line: header_line,
            column,
            message: format!("header must be `k n m`, found {} fields", header.len()),
        });
    }
    let k = number(header_line, header[0], "k")?;
    let n = number(header_line, header[1], "n")?;
    let m = number(header_line, header[2], "m")?;

    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (line, toks) in lines {
        if edges.len() == m {
            return Err(ParseError::Syntax {
                line,
                column: toks[0].0,
                message: format!("header declares {m} edges, found more"),
            });
        }
        let mut edge = Vec::with_capacity(toks.len());
        for tok in toks {
            let v = number(line, tok, "vertex index")?;
            if v >= n {
                return Err(ParseError::Invalid {
                    line,
                    source: HypergraphError::VertexOutOfRange { edge: edges.len(), vertex: v, n },
                });
            }
            edge.push(v);
        }
        edges.push(edge);
        edge_lines.push(line);
    }
    if edges.len() != m {
        return Err(ParseError::Syntax {
            line: input.lines().count().max(1),
            column: 1,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }

    Hypergraph::new(k, n, edges).map_err(|err| {
        let line = match &err {
            HypergraphError::NonUniformEdge { edge, .. } | HypergraphError::VertexOutOfRange { edge, .. } => {
                edge_lines[*edge]
            }
            HypergraphError::DuplicateEdge { second, .. } => edge_lines[*second],
            _ => header_line,
        };
        ParseError::Invalid { line, source: err }
    })
}

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.k(), h.n(), h.m());
    for e in h.edges() {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

pub fn to_json(h: &Hypergraph) -> String {
    serde_json::to_string(h).expect("hypergraphs serialize")
}
