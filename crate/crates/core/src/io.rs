//! Plain-text edge-list reading and writing.
//!
//! ```text
//! # comment
//! # n 5
//! 0 1
//! 1 4
//! ```
//!
//! A `# n <count>` directive pins the vertex count. Without it, the ids that
//! occur in the file are re-indexed densely in increasing order.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{BuildReport, Graph, Vertex};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub lines: usize,
    pub edges_read: usize,
    pub self_loops: usize,
    pub duplicates: usize,
    /// Set when ids had gaps and were compacted.
    pub reindexed: bool,
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Graph, ParseReport)> {
    let mut pinned_n: Option<usize> = None;
    let mut raw: Vec<(u64, u64)> = Vec::new();
    let mut report = ParseReport::default();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        report.lines = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            if parts.next() == Some("n") {
                let value = parts.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "directive '# n' without a count".into(),
                })?;
                let n = value.parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex count {value:?}: {e}"),
                })?;
                pinned_n = Some(n);
            }
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let mut field = |name: &str| -> Result<u64> {
            let tok = parts.next().ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("missing {name} endpoint"),
            })?;
            tok.parse::<u64>().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("bad vertex id {tok:?}: {e}"),
            })
        };
        let u = field("first")?;
        let v = field("second")?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "expected exactly two fields".into(),
            });
        }
        raw.push((u, v));
    }
    report.edges_read = raw.len();

    let (n, edges) = match pinned_n {
        Some(n) => {
            let mut edges = Vec::with_capacity(raw.len());
            for (u, v) in raw {
                if u >= n as u64 || v >= n as u64 {
                    return Err(Error::MalformedInput(format!(
                        "edge ({u}, {v}) exceeds pinned vertex count {n}"
                    )));
                }
                edges.push((u as Vertex, v as Vertex));
            }
            (n, edges)
        }
        None => {
            let ids: BTreeSet<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
            let ids: Vec<u64> = ids.into_iter().collect();
            let dense = ids.last().is_none_or(|&max| max + 1 == ids.len() as u64);
            report.reindexed = !dense;
            let index = |x: u64| ids.binary_search(&x).unwrap() as Vertex;
            let edges = raw.iter().map(|&(u, v)| (index(u), index(v))).collect();
            (ids.len(), edges)
        }
    };

    let (g, BuildReport { self_loops, duplicates }) = Graph::from_edges_with_report(n, &edges)?;
    report.self_loops = self_loops;
    report.duplicates = duplicates;
    Ok((g, report))
}

pub fn parse_edge_list_str(text: &str) -> Result<(Graph, ParseReport)> {
    parse_edge_list(text.as_bytes())
}

/// Writes `# n <n>` followed by every edge `u v` with `u < v`, sorted.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# n {}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

/// Writes one line of space-separated ids per tuple. Tuples are sorted
/// lexicographically first.
pub fn write_tuples<W: Write>(mut tuples: Vec<Vec<Vertex>>, mut out: W) -> Result<()> {
    tuples.sort_unstable();
    for t in tuples {
        let mut first = true;
        for v in t {
            if !first {
                out.write_all(b" ")?;
            }
            first = false;
            write!(out, "{v}")?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}
