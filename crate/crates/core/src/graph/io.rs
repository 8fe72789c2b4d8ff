//! Plain-text edge lists: a `# nodes=N` header line, then one `u v` pair per
//! line, 1-indexed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Graph, GraphError};

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# nodes={}\n", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        reason: "empty input".into(),
    })?;
    let node_count = header
        .trim()
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|h| h.strip_prefix("nodes="))
        .and_then(|n| n.trim().parse::<usize>().ok())
        .ok_or_else(|| GraphError::Parse {
            line: 1,
            reason: format!("expected '# nodes=N' header, found {header:?}"),
        })?;

    let mut edges = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| GraphError::Parse {
            line: idx + 1,
            reason,
        };
        let mut parts = line.split_whitespace();
        let mut label = || -> Result<usize, GraphError> {
            parts
                .next()
                .ok_or_else(|| bad("expected two labels".into()))?
                .parse::<usize>()
                .map_err(|e| bad(e.to_string()))
        };
        let u = label()?;
        let v = label()?;
        if parts.next().is_some() {
            return Err(bad("trailing tokens".into()));
        }
        edges.push((u, v));
    }
    Graph::new(node_count, edges)
}

pub fn read_edge_list(path: &Path) -> Result<Graph, GraphError> {
    let text = fs::read_to_string(path).map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
}
