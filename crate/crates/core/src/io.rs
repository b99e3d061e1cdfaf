//! Plain-text edge lists.
//!
//! One edge per line as two whitespace-separated zero-based integers. Text
//! after `#` is ignored. An optional `nodes N` line fixes the node count, which
//! is needed when trailing nodes are isolated; without it the count is one past
//! the largest endpoint.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(NodeId, NodeId, usize)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse = |tok: &str| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected a non-negative integer, found `{tok}`"),
            })
        };
        match fields.as_slice() {
            ["nodes", count] => {
                if declared.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "duplicate `nodes` header".into(),
                    });
                }
                declared = Some((parse(count)?, line_no));
            }
            [u, v] => {
                let (u, v) = (parse(u)?, parse(v)?);
                if u == v {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("self-loop on node {u}"),
                    });
                }
                edges.push((u, v, line_no));
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v` or `nodes N`, found `{content}`"),
                })
            }
        }
    }

    let n = match declared {
        Some((n, _)) => n,
        None => edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0),
    };
    if let Some(&(u, v, line)) = edges.iter().find(|&&(u, v, _)| u >= n || v >= n) {
        return Err(Error::Parse {
            line,
            message: format!("edge ({u}, {v}) exceeds declared node count {n}"),
        });
    }
    let pairs: Vec<_> = edges.into_iter().map(|(u, v, _)| (u, v)).collect();
    Graph::from_edges(n, &pairs)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    read_edge_list(text.as_bytes())
}

/// Writes `# <comment>` lines, the `nodes N` header, then edges in
/// lexicographic order.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W, comments: &[String]) -> Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    writeln!(out, "nodes {}", graph.node_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn edge_list_string(graph: &Graph, comments: &[String]) -> String {
    let mut buf = Vec::new();
    write_edge_list(graph, &mut buf, comments).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge lists are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_header() {
        let g = parse_edge_list("# a triangle\nnodes 4\n0 1\n1 2 # inline\n\n2 0\n").unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn infers_node_count() {
        let g = parse_edge_list("0 1\n1 5\n").unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(parse_edge_list("").unwrap().node_count(), 0);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_edge_list("nodes 2\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("0 1\n3 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_edge_list("0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    proptest! {
        #[test]
        fn save_then_load_is_identity(n in 0usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let edges: Vec<_> = raw.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let text = edge_list_string(&g, &["seed=1".to_string()]);
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(edge_list_string(&back, &["seed=1".to_string()]), text);
        }
    }
}
