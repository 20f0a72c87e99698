//! Graph documents: a JSON form for tooling and a whitespace edge list for
//! hand-authoring.
//!
//! Edge list: one edge per line as `<label> <label> <weight>`. A line with a
//! single label declares an isolated vertex. `#` starts a comment and blank
//! lines are ignored.
//!
//! JSON: `{"vertices": [...], "edges": [{"a": .., "b": .., "w": "<weight>"}]}`.
//! Weights are always strings so that no binary floating point is involved.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::graph::{GraphBuilder, WeightedGraph};
use crate::weight::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    EdgeList,
}

impl Format {
    /// `.json` files are JSON; everything else is an edge list.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("{location}: {message}")]
    Syntax { location: String, message: String },
    #[error("{location}: {source}")]
    Invalid { location: String, source: Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<DocumentEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentEdge {
    pub a: String,
    pub b: String,
    pub w: String,
}

impl GraphDocument {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphDocument {
            vertices: g.labels().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| DocumentEdge {
                    a: g.label(e.a).to_string(),
                    b: g.label(e.b).to_string(),
                    w: e.weight.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph, DocumentError> {
        let mut builder = GraphBuilder::new();
        for (i, v) in self.vertices.iter().enumerate() {
            builder.add_vertex(v.clone()).map_err(|source| DocumentError::Invalid {
                location: format!("vertices[{i}]"),
                source,
            })?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            let location = format!("edges[{i}]");
            let weight = parse_rational(&e.w).map_err(|message| DocumentError::Syntax {
                location: format!("{location}.w"),
                message,
            })?;
            builder
                .add_edge(&e.a, &e.b, weight)
                .map_err(|source| DocumentError::Invalid { location, source })?;
        }
        Ok(builder.build())
    }
}

pub fn parse_graph(document: &[u8], format: Format) -> Result<WeightedGraph, DocumentError> {
    match format {
        Format::Json => {
            let doc: GraphDocument = serde_json::from_slice(document).map_err(|e| DocumentError::Syntax {
                location: format!("line {}, column {}", e.line(), e.column()),
                message: e.to_string(),
            })?;
            doc.to_graph()
        }
        Format::EdgeList => parse_edge_list(document),
    }
}

fn parse_edge_list(document: &[u8]) -> Result<WeightedGraph, DocumentError> {
    let text = std::str::from_utf8(document).map_err(|e| DocumentError::Syntax {
        location: format!("byte {}", e.valid_up_to()),
        message: "document is not UTF-8".to_string(),
    })?;
    let mut builder = GraphBuilder::new();
    for (n, raw) in text.lines().enumerate() {
        let location = format!("line {}", n + 1);
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields[..] {
            [] => {}
            [v] => builder.ensure_vertex(v),
            [a, b, w] => {
                let weight = parse_rational(w).map_err(|message| DocumentError::Syntax {
                    location: location.clone(),
                    message,
                })?;
                builder.ensure_vertex(a);
                builder.ensure_vertex(b);
                builder
                    .add_edge(a, b, weight)
                    .map_err(|source| DocumentError::Invalid { location, source })?;
            }
            _ => {
                return Err(DocumentError::Syntax {
                    location,
                    message: format!("expected `<label> <label> <weight>`, found {} fields", fields.len()),
                })
            }
        }
    }
    Ok(builder.build())
}

pub fn to_json(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&GraphDocument::from_graph(g)).expect("documents serialize")
}

/// Labels containing whitespace or `#` cannot be written as an edge list.
pub fn to_edge_list(g: &WeightedGraph) -> Result<String, DocumentError> {
    if let Some(bad) = g
        .labels()
        .iter()
        .find(|l| l.is_empty() || l.contains('#') || l.chars().any(char::is_whitespace))
    {
        return Err(DocumentError::Syntax {
            location: format!("vertex `{bad}`"),
            message: "label is not representable in the edge-list format".to_string(),
        });
    }
    let mut out = String::new();
    for v in g.vertices() {
        if g.neighbors(v).is_empty() {
            writeln!(out, "{}", g.label(v)).expect("write to string");
        }
    }
    for e in g.edges() {
        writeln!(out, "{} {} {}", g.label(e.a), g.label(e.b), e.weight).expect("write to string");
    }
    Ok(out)
}
