//! Text format for digraphs.
//!
//! ```text
//! digraph v1
//! <order> <edges>
//! <from> <to>
//! ...
//! ```
//!
//! Lines starting with `#` are comments; blank lines are skipped. The
//! writer emits edges in ascending `(from, to)` order with no comments, so
//! output is canonical for a given graph.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::digraph::DiGraph;

pub const DIGRAPH_HEADER: &str = "digraph v1";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: expected header `{DIGRAPH_HEADER}`")]
    BadHeader { line: usize },
    #[error("line {line}: expected `<order> <edges>`")]
    BadCounts { line: usize },
    #[error("line {line}: expected `<from> <to>`")]
    BadEdge { line: usize },
    #[error("line {line}: loop edge ({v}, {v})")]
    LoopEdge { line: usize, v: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge ({u}, {v}) out of range for order {order}")]
    OutOfRange {
        line: usize,
        u: usize,
        v: usize,
        order: usize,
    },
    #[error("line {line}: unexpected content after {expected} edges")]
    TrailingContent { line: usize, expected: usize },
    #[error("expected {expected} edges, found {found}")]
    MissingEdges { expected: usize, found: usize },
}

pub fn write_digraph<W: Write>(mut w: W, g: &DiGraph) -> io::Result<()> {
    writeln!(w, "{DIGRAPH_HEADER}")?;
    writeln!(w, "{} {}", g.order(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_digraph<R: BufRead>(r: R) -> Result<DiGraph, ParseError> {
    let mut lines = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push((idx + 1, trimmed.to_string()));
    }
    let mut it = lines.into_iter();

    let (line, header) = it.next().ok_or(ParseError::BadHeader { line: 1 })?;
    if header != DIGRAPH_HEADER {
        return Err(ParseError::BadHeader { line });
    }

    let (line, counts) = it.next().ok_or(ParseError::BadCounts { line: line + 1 })?;
    let toks: Vec<&str> = counts.split_whitespace().collect();
    let (order, edge_count) = match toks.as_slice() {
        [n, m] => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) => (n, m),
            _ => return Err(ParseError::BadCounts { line }),
        },
        _ => return Err(ParseError::BadCounts { line }),
    };

    let mut edges = Vec::with_capacity(edge_count);
    let mut seen = std::collections::HashSet::with_capacity(edge_count);
    for (line, text) in it {
        if edges.len() == edge_count {
            return Err(ParseError::TrailingContent {
                line,
                expected: edge_count,
            });
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        let (u, v) = match toks.as_slice() {
            [a, b] => match (a.parse::<usize>(), b.parse::<usize>()) {
                (Ok(u), Ok(v)) => (u, v),
                _ => return Err(ParseError::BadEdge { line }),
            },
            _ => return Err(ParseError::BadEdge { line }),
        };
        if u >= order || v >= order {
            return Err(ParseError::OutOfRange { line, u, v, order });
        }
        if u == v {
            return Err(ParseError::LoopEdge { line, v });
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    if edges.len() != edge_count {
        return Err(ParseError::MissingEdges {
            expected: edge_count,
            found: edges.len(),
        });
    }
    Ok(DiGraph::from_edge_list(order, &edges).expect("edges validated during parse"))
}
