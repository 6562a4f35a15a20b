//! DIMACS graph format: `c` comment lines, one `p edge <n> <m>` header,
//! then `e <u> <v>` lines with 1-based endpoints.
//!
//! The parser tolerates duplicate edges and an inaccurate edge count in the
//! header; it rejects loops, out-of-range endpoints, and malformed lines.
//! The emitter is canonical: header first, then edges sorted
//! lexicographically, endpoints 1-based with the smaller one first.

use crate::graph::Graph;
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: expected `p edge <n> <m>`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("no `p edge` header before line {line}")]
    MissingHeader { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={order}")]
    VertexOutOfRange {
        line: usize,
        vertex: i64,
        order: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: malformed line {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: second `p` header")]
    DuplicateHeader { line: usize },
}

pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(DimacsError::DuplicateHeader { line });
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(DimacsError::BadHeader {
                        line,
                        found: trimmed.to_string(),
                    });
                }
                let n: usize = fields[2].parse().map_err(|_| DimacsError::BadHeader {
                    line,
                    found: trimmed.to_string(),
                })?;
                // The edge count is informational; real-world files get it
                // wrong, so it is parsed for shape but not enforced.
                let _m: usize = fields[3].parse().map_err(|_| DimacsError::BadHeader {
                    line,
                    found: trimmed.to_string(),
                })?;
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or(DimacsError::MissingHeader { line })?;
                if fields.len() != 3 {
                    return Err(DimacsError::Malformed {
                        line,
                        found: trimmed.to_string(),
                    });
                }
                let endpoint = |s: &str| -> Result<usize, DimacsError> {
                    let v: i64 = s.parse().map_err(|_| DimacsError::Malformed {
                        line,
                        found: trimmed.to_string(),
                    })?;
                    if v < 1 || v as usize > g.order() {
                        return Err(DimacsError::VertexOutOfRange {
                            line,
                            vertex: v,
                            order: g.order(),
                        });
                    }
                    Ok(v as usize - 1)
                };
                let u = endpoint(fields[1])?;
                let v = endpoint(fields[2])?;
                if u == v {
                    return Err(DimacsError::SelfLoop {
                        line,
                        vertex: u + 1,
                    });
                }
                g.add_edge(u, v);
            }
            _ => {
                return Err(DimacsError::Malformed {
                    line,
                    found: trimmed.to_string(),
                });
            }
        }
    }
    graph.ok_or(DimacsError::MissingHeader {
        line: text.lines().count() + 1,
    })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.order(), g.size()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
