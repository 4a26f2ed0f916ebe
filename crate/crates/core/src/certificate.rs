//! Text format for subdivision certificates.
//!
//! A certificate names the branch vertices and, for every ordered pair of
//! distinct branch vertices, a dipath between them. The format is plain
//! whitespace-separated text:
//!
//! ```text
//! subdivision-cert v1
//! graph-order 25
//! branch 2 3 7
//! path 3 7 1 12
//! path 7 3 0
//! ```
//!
//! A `path` line carries source, target, inner-vertex count, then that
//! many inner vertices in path order. Blank lines and `#` comments are
//! skipped on input; the writer never emits them.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::digraph::{Dipath, VertexId};

pub const CERT_HEADER: &str = "subdivision-cert v1";

/// Claimed subdivision: branch vertices plus one dipath per ordered pair.
/// Purely syntactic here; [`crate::verifier::verify_certificate`] checks
/// it against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionCertificate {
    pub graph_order: usize,
    pub branch: Vec<VertexId>,
    pub paths: Vec<Dipath>,
}

#[derive(Debug, Error)]
pub enum CertParseError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: expected header '{CERT_HEADER}'")]
    BadHeader { line: usize },
    #[error("line {line}: expected 'graph-order <n>'")]
    BadOrderLine { line: usize },
    #[error("line {line}: expected 'branch <count> <ids...>'")]
    BadBranchLine { line: usize },
    #[error("line {line}: expected 'path <from> <to> <count> <inner...>'")]
    BadPathLine { line: usize },
    #[error("unexpected end of input: missing {expected}")]
    UnexpectedEnd { expected: &'static str },
}

pub fn write_certificate<W: Write>(mut w: W, cert: &SubdivisionCertificate) -> io::Result<()> {
    writeln!(w, "{CERT_HEADER}")?;
    writeln!(w, "graph-order {}", cert.graph_order)?;
    write!(w, "branch {}", cert.branch.len())?;
    for &b in &cert.branch {
        write!(w, " {b}")?;
    }
    writeln!(w)?;
    for p in &cert.paths {
        write!(w, "path {} {} {}", p.source, p.target, p.inner.len())?;
        for &v in &p.inner {
            write!(w, " {v}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_certificate<R: BufRead>(r: R) -> Result<SubdivisionCertificate, CertParseError> {
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

    let (line, content) = it.next().ok_or(CertParseError::UnexpectedEnd { expected: "header" })?;
    if content != CERT_HEADER {
        return Err(CertParseError::BadHeader { line });
    }

    let (line, content) = it
        .next()
        .ok_or(CertParseError::UnexpectedEnd { expected: "graph-order line" })?;
    let toks: Vec<&str> = content.split_whitespace().collect();
    let graph_order = match toks.as_slice() {
        ["graph-order", n] => n
            .parse::<usize>()
            .map_err(|_| CertParseError::BadOrderLine { line })?,
        _ => return Err(CertParseError::BadOrderLine { line }),
    };

    let (line, content) = it
        .next()
        .ok_or(CertParseError::UnexpectedEnd { expected: "branch line" })?;
    let toks: Vec<&str> = content.split_whitespace().collect();
    let branch = match toks.as_slice() {
        ["branch", count, ids @ ..] => {
            let count: usize = count
                .parse()
                .map_err(|_| CertParseError::BadBranchLine { line })?;
            if ids.len() != count {
                return Err(CertParseError::BadBranchLine { line });
            }
            ids.iter()
                .map(|t| t.parse::<VertexId>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CertParseError::BadBranchLine { line })?
        }
        _ => return Err(CertParseError::BadBranchLine { line }),
    };

    let mut paths = Vec::new();
    for (line, content) in it {
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["path", from, to, count, inner @ ..] => {
                let source: VertexId = from
                    .parse()
                    .map_err(|_| CertParseError::BadPathLine { line })?;
                let target: VertexId = to
                    .parse()
                    .map_err(|_| CertParseError::BadPathLine { line })?;
                let count: usize = count
                    .parse()
                    .map_err(|_| CertParseError::BadPathLine { line })?;
                if inner.len() != count {
                    return Err(CertParseError::BadPathLine { line });
                }
                let inner = inner
                    .iter()
                    .map(|t| t.parse::<VertexId>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CertParseError::BadPathLine { line })?;
                paths.push(Dipath { source, target, inner });
            }
            _ => return Err(CertParseError::BadPathLine { line }),
        }
    }

    Ok(SubdivisionCertificate { graph_order, branch, paths })
}
