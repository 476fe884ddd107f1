//! Graph file formats: whitespace edge lists and a minimal GML subset.

use std::fmt::Write as _;
use std::path::Path;

use sbmk_core::graph::{Graph, GraphBuilder};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("no edges or nodes found after comment stripping")]
    EmptyGraph,
    #[error("line {line}: expected two whitespace-separated node tokens, found {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: malformed header: {text}")]
    MalformedHeader { line: usize, text: String },
    #[error("gml: {0}")]
    Gml(String),
    #[error(transparent)]
    Graph(#[from] sbmk_core::graph::GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Gml,
}

impl GraphFormat {
    /// Chooses by file extension; anything but .gml is read as edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("gml") => GraphFormat::Gml,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Gml => parse_gml(text),
    }
}

/// Parses "u v" lines; '#' starts a comment. A "#nodes N" header declares
/// nodes 0..N−1 explicitly so isolated nodes can be expressed. Nodes are
/// numbered in first-appearance order and repeated lines accumulate edge
/// multiplicity; "x x" is a self-loop.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut builder = GraphBuilder::new();
    let mut saw_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("#nodes") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| FormatError::MalformedHeader {
                    line: line_no,
                    text: raw.to_string(),
                })?;
            builder.declare_numeric_nodes(n);
            saw_content = true;
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(FormatError::MalformedLine {
                line: line_no,
                found: tokens.len(),
            });
        }
        builder.edge(tokens[0], tokens[1]);
        saw_content = true;
    }
    if !saw_content || builder.node_count() == 0 {
        return Err(FormatError::EmptyGraph);
    }
    Ok(builder.build()?)
}

/// Canonical edge-list serialization: a "#nodes N" header when every label
/// is its own index (so isolated nodes round-trip), then one line per unit
/// of edge multiplicity in sorted endpoint order.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    let numeric = (0..graph.n()).all(|i| graph.label(i) == i.to_string());
    if numeric {
        let _ = writeln!(out, "#nodes {}", graph.n());
    }
    for (u, v) in graph.edge_multiset() {
        let _ = writeln!(
            out,
            "{} {}",
            graph.label(u as usize),
            graph.label(v as usize)
        );
    }
    out
}

/// Minimal GML subset: `node [ id .. label .. ]` and
/// `edge [ source .. target .. ]`; every other field is ignored.
pub fn parse_gml(text: &str) -> Result<Graph, FormatError> {
    let tokens = gml_tokens(text);
    let mut nodes: Vec<(i64, Option<String>)> = Vec::new();
    let mut edges: Vec<(i64, i64)> = Vec::new();

    let mut pos = 0usize;
    while pos < tokens.len() {
        match tokens[pos].as_str() {
            "node" => {
                let (fields, next) = gml_block(&tokens, pos + 1)?;
                let id = fields
                    .iter()
                    .find(|(k, _)| k == "id")
                    .and_then(|(_, v)| v.parse::<i64>().ok())
                    .ok_or_else(|| FormatError::Gml("node without integer id".into()))?;
                let label = fields
                    .iter()
                    .find(|(k, _)| k == "label")
                    .map(|(_, v)| v.clone());
                nodes.push((id, label));
                pos = next;
            }
            "edge" => {
                let (fields, next) = gml_block(&tokens, pos + 1)?;
                let get = |key: &str| {
                    fields
                        .iter()
                        .find(|(k, _)| k == key)
                        .and_then(|(_, v)| v.parse::<i64>().ok())
                };
                let source =
                    get("source").ok_or_else(|| FormatError::Gml("edge without source".into()))?;
                let target =
                    get("target").ok_or_else(|| FormatError::Gml("edge without target".into()))?;
                edges.push((source, target));
                pos = next;
            }
            _ => pos += 1,
        }
    }

    if nodes.is_empty() {
        return Err(FormatError::EmptyGraph);
    }
    let mut builder = GraphBuilder::new();
    let mut id_to_label: std::collections::HashMap<i64, String> = std::collections::HashMap::new();
    for (id, label) in &nodes {
        let label = label.clone().unwrap_or_else(|| id.to_string());
        builder.node(&label);
        id_to_label.insert(*id, label);
    }
    for (s, t) in &edges {
        let a = id_to_label
            .get(s)
            .ok_or_else(|| FormatError::Gml(format!("edge references unknown node id {s}")))?;
        let b = id_to_label
            .get(t)
            .ok_or_else(|| FormatError::Gml(format!("edge references unknown node id {t}")))?;
        builder.edge(a, b);
    }
    Ok(builder.build()?)
}

fn gml_tokens(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            for ch in chars.by_ref() {
                if ch == '"' {
                    break;
                }
                s.push(ch);
            }
            tokens.push(format!("\"{s}"));
        } else if c == '[' || c == ']' {
            chars.next();
            tokens.push(c.to_string());
        } else {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '[' || ch == ']' || ch == '"' {
                    break;
                }
                s.push(ch);
                chars.next();
            }
            tokens.push(s);
        }
    }
    tokens
}

/// Reads one `[ key value ... ]` block starting at `start`, skipping nested
/// blocks, and returns its scalar key/value pairs plus the index after the
/// closing bracket. Quoted values are stored without quotes.
fn gml_block(
    tokens: &[String],
    start: usize,
) -> Result<(Vec<(String, String)>, usize), FormatError> {
    let mut pos = start;
    if tokens.get(pos).map(String::as_str) != Some("[") {
        return Err(FormatError::Gml("expected '[' after node/edge".into()));
    }
    pos += 1;
    let mut fields = Vec::new();
    while pos < tokens.len() {
        match tokens[pos].as_str() {
            "]" => return Ok((fields, pos + 1)),
            "[" => {
                // skip anonymous nested block
                let mut depth = 1;
                pos += 1;
                while pos < tokens.len() && depth > 0 {
                    match tokens[pos].as_str() {
                        "[" => depth += 1,
                        "]" => depth -= 1,
                        _ => {}
                    }
                    pos += 1;
                }
            }
            key => {
                let value = tokens
                    .get(pos + 1)
                    .ok_or_else(|| FormatError::Gml(format!("key '{key}' without value")))?;
                if value == "[" {
                    let (_, next) = gml_block(tokens, pos + 1)?;
                    pos = next;
                } else {
                    let clean = value.strip_prefix('"').unwrap_or(value);
                    fields.push((key.to_string(), clean.to_string()));
                    pos += 2;
                }
            }
        }
    }
    Err(FormatError::Gml("unterminated block".into()))
}

/// Sidecar format for planted assignments: "label group" per line.
pub fn write_assignment(graph: &Graph, assignment: &[u32]) -> String {
    let mut out = String::new();
    for (i, &g) in assignment.iter().enumerate() {
        let _ = writeln!(out, "{} {}", graph.label(i), g);
    }
    out
}
