//! Edge-list and JSON graph files.
//!
//! Edge-list text:
//!
//! ```text
//! # name: petersen
//! n 10 root 0
//! 0 1
//! 0 4
//! ```
//!
//! `#` starts a comment anywhere on a line; a leading `# name: <label>` comment
//! carries the graph label. Saved files list edges `u < v` in lexicographic
//! order, so saving is canonical.

use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub root: usize,
    pub edges: Vec<[usize; 2]>,
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# name: {}", g.name());
    let _ = writeln!(out, "n {} root {}", g.n(), g.root());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn to_json(g: &Graph) -> String {
    let file = GraphFile { name: Some(g.name().to_string()), n: g.n(), root: g.root(), edges: g.edges().map(|(u, v)| [u, v]).collect() };
    serde_json::to_string(&file).expect("graph file serializes")
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut name = None;
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if let Some(label) = trimmed.strip_prefix("# name:") {
            name.get_or_insert_with(|| label.trim().to_string());
        }
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let bad = |message: String| Error::Parse { line: line_no, message };
        match header {
            None => {
                let ["n", n, "root", root] = tokens.as_slice() else {
                    return Err(bad(format!("expected header 'n <count> root <id>', found '{content}'")));
                };
                let n = n.parse().map_err(|_| bad(format!("bad vertex count '{n}'")))?;
                let root = root.parse().map_err(|_| bad(format!("bad root '{root}'")))?;
                header = Some((n, root));
            }
            Some(_) => {
                let [u, v] = tokens.as_slice() else {
                    return Err(bad(format!("expected 'u v', found '{content}'")));
                };
                let u: usize = u.parse().map_err(|_| bad(format!("bad vertex '{u}'")))?;
                let v: usize = v.parse().map_err(|_| bad(format!("bad vertex '{v}'")))?;
                edges.push((u, v));
            }
        }
    }
    let (n, root) = header.ok_or(Error::Parse { line: 0, message: "missing header line".into() })?;
    let g = Graph::new(n, &edges, root)?;
    Ok(match name {
        Some(name) => g.with_name(name),
        None => g,
    })
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(text)?;
    let edges: Vec<_> = file.edges.iter().map(|e| (e[0], e[1])).collect();
    let g = Graph::new(file.n, &edges, file.root)?;
    Ok(match file.name {
        Some(name) => g.with_name(name),
        None => g,
    })
}

/// Loads either format; JSON is recognized by a `.json` extension or a leading `{`.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    let g = if is_json { parse_json(&text)? } else { parse_edge_list(&text)? };
    if g.name() == "graph" {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            return Ok(g.with_name(stem));
        }
    }
    Ok(g)
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = if path.extension().is_some_and(|e| e == "json") { to_json(g) } else { to_edge_list(g) };
    std::fs::write(path, text)?;
    Ok(())
}
