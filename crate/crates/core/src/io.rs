//! Edge-list text format: a header line `n m`, then `m` lines `u v`
//! (0-based). Blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(Error::Parse { line, msg: format!("expected two integers, got `{l}`") }),
        }
    };

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let (n, m) = pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = pair(line, l)?;
        if u == v {
            return Err(Error::Parse { line, msg: format!("self-loop at {u}") });
        }
        if u >= n || v >= n {
            return Err(Error::Parse { line, msg: format!("vertex out of range for n={n}") });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.size() + 1));
    let _ = writeln!(out, "{} {}", g.order(), g.size());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
    parse_edge_list(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn writes_sorted_and_reads_back() {
        let g = generate(Family::RandomPlanar(25, 3)).unwrap();
        let text = write_edge_list(&g);
        assert!(text.starts_with("25 69\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn blank_lines_ignored() {
        let g = parse_edge_list("\n3 2\n\n0 1\n\n1 2\n\n").unwrap();
        assert_eq!(g.size(), 2);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 1\n0 0\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n1 0\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        assert!(parse_edge_list("3 1\n0 5\n").is_err());
    }
}
