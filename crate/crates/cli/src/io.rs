//! Graph file format.
//!
//! ```text
//! c optional comment lines anywhere
//! p ds <n> <m>
//! <u> <v>        (m edge lines, 1-indexed endpoints)
//! w <u>          (optional: mark vertex u white)
//! ```
//!
//! Vertices default to black. Writing renumbers vertices 1..n by
//! ascending internal id, so read ∘ write ∘ read is the identity up to
//! renumbering.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use dskern_core::graph::{Color, Graph, Origin, VertexId};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ParseError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: malformed header {content:?}, expected `p ds <n> <m>`")]
    MalformedHeader { line: usize, content: String },
    #[error("missing `p ds <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: malformed edge {content:?}")]
    MalformedEdge { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on {u}")]
    SelfLoop { line: usize, u: usize },
    #[error("line {line}: found edge line after all {m} edges were read")]
    TooManyEdges { line: usize, m: usize },
    #[error("expected {expected} edges, found only {found}")]
    TooFewEdges { expected: usize, found: usize },
    #[error("line {line}: malformed white marker {content:?}, expected `w <u>`")]
    MalformedWhite { line: usize, content: String },
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let bad = || ParseError::MalformedHeader {
        line: line_no,
        content: line.to_string(),
    };
    let mut it = line.split_ascii_whitespace();
    if it.next() != Some("p") || it.next() != Some("ds") {
        return Err(bad());
    }
    let n = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let m = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

/// Reads a graph; vertex `i` of the file becomes the i-th allocated id.
pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new();
    let mut ids: Vec<VertexId> = Vec::new();
    let mut seen_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges_read = 0usize;

    for (ix, line) in reader.lines().enumerate() {
        let line_no = ix + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let Some((n, m)) = header else {
            let (n, m) = parse_header(line_no, trimmed)?;
            ids = (0..n)
                .map(|_| g.add_vertex(Color::Black, Origin::Original))
                .collect();
            header = Some((n, m));
            continue;
        };
        if let Some(rest) = trimmed.strip_prefix("w ").or_else(|| {
            (trimmed == "w").then_some("")
        }) {
            if edges_read < m {
                return Err(ParseError::TooFewEdges {
                    expected: m,
                    found: edges_read,
                });
            }
            let u: usize = rest
                .trim()
                .parse()
                .map_err(|_| ParseError::MalformedWhite {
                    line: line_no,
                    content: trimmed.to_string(),
                })?;
            if u < 1 || u > n {
                return Err(ParseError::OutOfRange {
                    line: line_no,
                    vertex: u,
                    n,
                });
            }
            g.set_color(ids[u - 1], Color::White).unwrap();
            continue;
        }
        // An edge line.
        if edges_read == m {
            return Err(ParseError::TooManyEdges { line: line_no, m });
        }
        let mut it = trimmed.split_ascii_whitespace();
        let bad = || ParseError::MalformedEdge {
            line: line_no,
            content: trimmed.to_string(),
        };
        let u: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let v: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if it.next().is_some() {
            return Err(bad());
        }
        for &x in &[u, v] {
            if x < 1 || x > n {
                return Err(ParseError::OutOfRange {
                    line: line_no,
                    vertex: x,
                    n,
                });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line: line_no, u });
        }
        if !seen_edges.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { line: line_no, u, v });
        }
        g.add_edge(ids[u - 1], ids[v - 1]).unwrap();
        edges_read += 1;
    }
    let Some((_, m)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if edges_read != m {
        return Err(ParseError::TooFewEdges {
            expected: m,
            found: edges_read,
        });
    }
    Ok(g)
}

/// Writes a graph in the same format, vertices renumbered 1..n by
/// ascending internal id. Gadget vertices serialize as ordinary vertices.
pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let label = |v: VertexId| vs.binary_search(&v).unwrap() + 1;
    writeln!(out, "p ds {} {}", vs.len(), g.num_edges())?;
    for (u, v) in g.edge_list() {
        writeln!(out, "{} {}", label(u), label(v))?;
    }
    for &v in &vs {
        if g.color(v).unwrap() == Color::White {
            writeln!(out, "w {}", label(v))?;
        }
    }
    Ok(())
}

/// Renders a graph to its file-format string.
pub fn graph_to_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(s: &str) -> Result<Graph, ParseError> {
        read_graph(Cursor::new(s))
    }

    #[test]
    fn reads_a_single_edge() {
        let g = parse("p ds 2 1\n1 2\n").unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert!(g.vertices().all(|v| g.color(v).unwrap() == Color::Black));
    }

    #[test]
    fn white_markers_apply() {
        let g = parse("p ds 2 1\n1 2\nw 2\n").unwrap();
        let vs: Vec<_> = g.vertices().collect();
        assert_eq!(g.color(vs[0]).unwrap(), Color::Black);
        assert_eq!(g.color(vs[1]).unwrap(), Color::White);
    }

    #[test]
    fn comments_and_blank_lines_skip() {
        let g = parse("c hello\n\np ds 3 2\nc mid\n1 2\n2 3\n").unwrap();
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn out_of_range_endpoint_reports_line() {
        let err = parse("p ds 2 1\n1 3\n").unwrap_err();
        match err {
            ParseError::OutOfRange { line, vertex, n } => {
                assert_eq!((line, vertex, n), (2, 3, 2));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn rejects_duplicates_self_loops_bad_counts() {
        assert!(matches!(
            parse("p ds 2 2\n1 2\n2 1\n"),
            Err(ParseError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            parse("p ds 2 1\n1 1\n"),
            Err(ParseError::SelfLoop { .. })
        ));
        assert!(matches!(
            parse("p ds 2 2\n1 2\n"),
            Err(ParseError::TooFewEdges { .. })
        ));
        assert!(matches!(
            parse("p ds 2 1\n1 2\n1 2\n"),
            Err(ParseError::TooManyEdges { .. })
        ));
        assert!(matches!(parse(""), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse("p dss 2 1\n1 2\n"),
            Err(ParseError::MalformedHeader { .. })
        ));
    }

    #[test]
    fn empty_graph_round_trips() {
        let g = Graph::new();
        assert_eq!(graph_to_string(&g), "p ds 0 0\n");
        let back = parse("p ds 0 0\n").unwrap();
        assert_eq!(back.num_vertices(), 0);
    }

    #[test]
    fn round_trip_preserves_structure() {
        let g = parse("p ds 4 3\n1 2\n2 3\n3 4\nw 1\nw 4\n").unwrap();
        let text = graph_to_string(&g);
        let back = parse(&text).unwrap();
        assert_eq!(graph_to_string(&back), text);
        let degs = |g: &Graph| {
            let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v).unwrap()).collect();
            d.sort_unstable();
            d
        };
        assert_eq!(degs(&g), degs(&back));
    }
}
