//! Edge-list text formats.
//!
//! Native format: optional `p <n> <m>` header, then one `u v` pair per line,
//! 0-based. DIMACS: `p edge <n> <m>` header and `e u v` lines, 1-based.
//! `#` starts a comment (as does `c` at line start in DIMACS files).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, MultiGraph};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

fn number(tok: Option<&str>, line: usize) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| malformed(line, "missing field"))?;
    tok.parse()
        .map_err(|_| malformed(line, format!("not a non-negative integer: {tok:?}")))
}

/// Parses either format; DIMACS is recognized by its `p edge` header or `e` lines.
pub fn parse_graph(text: &str) -> Result<MultiGraph, ParseError> {
    let mut edges = Vec::new();
    let mut n_hint = 0;
    let mut dimacs = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let first = toks.next().expect("non-empty line");
        match first {
            "c" => continue,
            "p" => {
                let next = toks.next();
                if next.is_some_and(|t| t.parse::<usize>().is_err()) {
                    // `p edge n m` (or any other DIMACS problem name)
                    dimacs = true;
                    n_hint = number(toks.next(), lineno)?;
                } else {
                    n_hint = number(next, lineno)?;
                }
                // the edge count is advisory
                number(toks.next(), lineno)?;
            }
            "e" => {
                dimacs = true;
                let u = number(toks.next(), lineno)?;
                let v = number(toks.next(), lineno)?;
                if u == 0 || v == 0 {
                    return Err(malformed(lineno, "DIMACS labels are 1-based"));
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                if dimacs {
                    return Err(malformed(lineno, "expected `e u v`"));
                }
                let u = number(Some(first), lineno)?;
                let v = number(toks.next(), lineno)?;
                edges.push((u, v));
            }
        }
        if toks.next().is_some() {
            return Err(malformed(lineno, "trailing fields"));
        }
    }
    Ok(MultiGraph::from_edge_list(&edges, n_hint)?)
}

/// Writes the native format with sorted pairs. The header uses the id bound
/// so isolated trailing vertices survive a round trip.
pub fn write_graph(g: &MultiGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.id_bound(), g.m()).unwrap();
    for (u, v, k) in g.edges() {
        for _ in 0..k {
            writeln!(out, "{} {}", u, v).unwrap();
        }
    }
    out
}

/// Parses a vertex-set file: one id per line, `#` comments allowed.
pub fn parse_vertex_set(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for tok in line.split_whitespace() {
            out.push(number(Some(tok), i + 1)?);
        }
    }
    Ok(out)
}
