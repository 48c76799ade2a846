//! Edge-list text format.
//!
//! ```text
//! n 4
//! 1 2
//! 2 3
//! 3 4
//! ```
//!
//! The first line declares the vertex count, every following line holds one
//! 1-indexed edge. Blank lines and lines starting with `#` are skipped.

use super::Graph;
use crate::error::{Error, Result};

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedFile {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("n") {
        return Err(malformed(header_line, "header must read \"n <count>\""));
    }
    let n: usize = fields
        .next()
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| malformed(header_line, "vertex count is not a nonnegative integer"))?;
    if fields.next().is_some() {
        return Err(malformed(header_line, "trailing fields after vertex count"));
    }

    let mut g = Graph::empty(n);
    for (line, content) in lines {
        let parts: Vec<&str> = content.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(malformed(line, "expected two vertices"));
        }
        let mut ends = [0usize; 2];
        for (slot, p) in ends.iter_mut().zip(&parts) {
            let v: usize = p
                .parse()
                .map_err(|_| malformed(line, format!("{p:?} is not a vertex index")))?;
            if v == 0 || v > n {
                return Err(malformed(line, format!("vertex {v} out of range 1..={n}")));
            }
            *slot = v - 1;
        }
        if ends[0] == ends[1] {
            return Err(malformed(line, "self-loop"));
        }
        g.add_edge(ends[0], ends[1]);
    }
    Ok(g)
}

/// Canonical form: header, then edges `u < v` in lexicographic order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_triangle() {
        let k3 = Graph::complete(3);
        let text = format_edge_list(&k3);
        assert_eq!(text, "n 3\n1 2\n1 3\n2 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), k3);
    }

    #[test]
    fn rejects_zero_index() {
        let err = parse_edge_list("n 3\n0 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::MalformedFile {
                line: 2,
                message: "vertex 0 out of range 1..=3".into()
            }
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            parse_edge_list("n 3\n2 5\n"),
            Err(Error::MalformedFile { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_bad_header_and_loops() {
        assert!(matches!(parse_edge_list(""), Err(Error::MalformedFile { line: 1, .. })));
        assert!(matches!(parse_edge_list("m 3\n"), Err(Error::MalformedFile { line: 1, .. })));
        assert!(matches!(
            parse_edge_list("n 3\n\n2 2\n"),
            Err(Error::MalformedFile { line: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("n 3\n1 2 3\n"),
            Err(Error::MalformedFile { line: 2, .. })
        ));
    }

    #[test]
    fn isolated_vertices_survive() {
        let g = parse_edge_list("n 5\n# comment\n1 2\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 1);
    }
}
