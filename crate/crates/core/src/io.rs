//! JSON and plain-text graph documents, and coloring documents.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, Coloring, Embedding, Graph, GraphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Text { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("coloring has {got} entries but the graph has {want} vertices")]
    ColoringLength { got: usize, want: usize },
    #[error("color {0} outside the palette 1..={1}")]
    ColorOutOfRange(u32, u32),
}

/// `{"n": .., "edges": [[u, v], ..], "rotations": [[..], ..], "meta": {..}}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotations: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph, emb: Option<&Embedding>) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            rotations: emb.map(|e| e.rotations().to_vec()),
            meta: None,
        }
    }

    pub fn to_graph(&self) -> Result<(Graph, Option<Embedding>), GraphError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(self.n, &edges)?;
        let emb = match &self.rotations {
            Some(rot) => {
                let emb = Embedding::new(rot.clone());
                emb.check_against(&g)?;
                Some(emb)
            }
            None => None,
        };
        Ok((g, emb))
    }
}

/// Parses either a JSON graph document or the plain-text edge-list format
/// (`n m` header, then `u v` per line, `#` comments).
pub fn parse_graph(input: &str) -> Result<GraphDoc, IoError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| IoError::Text { line: idx + 1, msg: e.to_string() })?;
        if nums.len() != 2 {
            return Err(IoError::Text {
                line: idx + 1,
                msg: format!("expected two integers, found {}", nums.len()),
            });
        }
        match header {
            None => header = Some((nums[0], nums[1])),
            Some(_) => edges.push([nums[0], nums[1]]),
        }
    }
    let (n, m) = header.ok_or(IoError::Text { line: 0, msg: "missing header".into() })?;
    if edges.len() != m {
        return Err(IoError::Text {
            line: 0,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(GraphDoc { n, edges, rotations: None, meta: None })
}

/// `{"k": 9, "colors": [1, 2, ..]}`; unassigned vertices are `null`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ColoringDoc {
    pub k: u32,
    pub colors: Vec<Option<u32>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ColoringInput {
    Doc(ColoringDoc),
    Bare(Vec<Option<u32>>),
}

impl ColoringDoc {
    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringDoc {
            k: c.k() as u32,
            colors: c.as_slice().iter().map(|c| c.map(u32::from)).collect(),
        }
    }

    pub fn to_coloring(&self, n: usize) -> Result<Coloring, IoError> {
        if self.colors.len() != n {
            return Err(IoError::ColoringLength { got: self.colors.len(), want: n });
        }
        let k = self.k.min(Color::MAX as u32);
        let colors = self
            .colors
            .iter()
            .map(|c| match *c {
                Some(c) if c == 0 || c > k => Err(IoError::ColorOutOfRange(c, k)),
                Some(c) => Ok(Some(c as Color)),
                None => Ok(None),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Coloring::from_partial(colors, k as Color))
    }
}

/// Accepts a coloring document or a bare JSON array (palette = max color).
pub fn parse_coloring(input: &str) -> Result<ColoringDoc, IoError> {
    Ok(match serde_json::from_str::<ColoringInput>(input)? {
        ColoringInput::Doc(d) => d,
        ColoringInput::Bare(colors) => {
            let k = colors.iter().flatten().copied().max().unwrap_or(0);
            ColoringDoc { k, colors }
        }
    })
}

/// Undirected DOT rendering; every vertex is listed so isolated ones show.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
