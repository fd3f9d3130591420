//! Plain-text edge lists: one `u v` pair per line, `#` starts a comment.
//!
//! An optional `n <order>` line fixes the vertex count, which is the only
//! way to express trailing isolated vertices. Without it the order is one
//! more than the largest endpoint.

use thiserror::Error;

use super::{from_graph6, Graph, Graph6Error, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut order: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let number = |t: &str| {
            t.parse::<usize>().map_err(|_| ParseError::Syntax {
                line: line_no,
                message: format!("expected a vertex index, found {t:?}"),
            })
        };
        match tokens.as_slice() {
            ["n", count] => {
                if order.is_some() {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        message: "duplicate order line".into(),
                    });
                }
                order = Some((number(count)?, line_no));
            }
            [u, v] => edges.push((number(u)?, number(v)?, line_no)),
            _ => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    message: format!("expected `u v` or `n <order>`, found {line:?}"),
                })
            }
        }
    }
    let n = match order {
        Some((n, _)) => n,
        None => edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0),
    };
    let mut b = super::GraphBuilder::new(n);
    for (u, v, line) in edges {
        b.add_edge(u, v)
            .map_err(|source| ParseError::Graph { line, source })?;
    }
    Ok(b.build())
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Accepts either a single graph6 record (optionally preceded by the
/// `>>graph6<<` marker) or an edge list.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
    let looks_graph6 = !body.is_empty()
        && !body.contains(char::is_whitespace)
        && body.bytes().all(|b| (63..=126).contains(&b));
    if looks_graph6 {
        Ok(from_graph6(body.as_bytes())?)
    } else {
        parse_edge_list(trimmed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_order() {
        let g = parse_edge_list("# triangle plus isolated\nn 5\n0 1\n1 2 # inline\n2 0\n").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.edge_count(), 3);
        let g = parse_edge_list("0 3\n").unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 1));
        assert_eq!(parse_edge_list("").unwrap().order(), 0);
    }

    #[test]
    fn reports_bad_lines() {
        assert!(matches!(
            parse_edge_list("0 1\n2\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("n 3\n0 3\n"),
            Err(ParseError::Graph { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("1 1\n"),
            Err(ParseError::Graph { source: GraphError::SelfLoop(1), .. })
        ));
    }

    #[test]
    fn autodetects_format() {
        assert_eq!(parse_graph("Bw\n").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph(">>graph6<<Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph("0 1\n1 2\n0 2").unwrap(), Graph::complete(3));
        let g = Graph::disjoint_union(&[Graph::cycle(5), Graph::empty(2)]);
        assert_eq!(parse_graph(&to_edge_list(&g)).unwrap(), g);
    }
}
