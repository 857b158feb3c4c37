//! JSON graph files.
//!
//! ```json
//! {
//!   "vertices": [{"id": "x", "mu": "inf"}, {"id": "y", "mu": 2}],
//!   "less":     [["y", "x"]],
//!   "edges":    [["x", "y"]],
//!   "phi":      {"x": [["y", "y"]]}
//! }
//! ```
//!
//! `less` pairs `[a, b]` mean `a < b` and may be any acyclic relation; the
//! loader takes the transitive closure. `phi` lists `[y, φ_x(y)]` pairs per
//! vertex `x`; omitted entries are the identity. `less`, `edges` and `phi`
//! may be omitted. Unknown fields are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Mu};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexEntry>,
    #[serde(default)]
    less: Vec<(String, String)>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    phi: BTreeMap<String, Vec<(String, String)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: String,
    mu: MuEntry,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum MuEntry {
    Int(u64),
    Text(String),
}

pub fn from_json(text: &str) -> Result<FiniteGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Graph(e.to_string()))?;
    let mut b = FiniteGraph::builder();
    for v in file.vertices {
        let mu = match v.mu {
            MuEntry::Int(k) => Mu::Finite(
                u32::try_from(k).map_err(|_| Error::Graph(format!("mu({}) too large", v.id)))?,
            ),
            MuEntry::Text(s) if s == "inf" => Mu::Infinite,
            MuEntry::Text(s) => {
                return Err(Error::Graph(format!(
                    "mu({}) must be an integer or \"inf\", got \"{s}\"",
                    v.id
                )))
            }
        };
        b = b.vertex(v.id, mu);
    }
    for (a, c) in file.less {
        b = b.less(a, c);
    }
    for (a, c) in file.edges {
        b = b.edge(a, c);
    }
    for (x, pairs) in file.phi {
        for (y, img) in pairs {
            b = b.phi(x.clone(), y, img);
        }
    }
    b.build()
}

pub fn load(path: impl AsRef<Path>) -> Result<FiniteGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Graph(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| match e {
        Error::Graph(m) => Error::Graph(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Serializes `g`; `less` is written as the full closure.
pub fn to_json(g: &FiniteGraph) -> String {
    let file = GraphFile {
        vertices: g
            .ids()
            .map(|v| VertexEntry {
                id: g.name(v).to_string(),
                mu: match crate::graph::TrickleGraph::mu(g, &v) {
                    Mu::Finite(k) => MuEntry::Int(k as u64),
                    Mu::Infinite => MuEntry::Text("inf".into()),
                },
            })
            .collect(),
        less: g
            .order_pairs()
            .into_iter()
            .map(|(a, b)| (g.name(a).into(), g.name(b).into()))
            .collect(),
        edges: g
            .edges()
            .into_iter()
            .map(|(a, b)| (g.name(a).into(), g.name(b).into()))
            .collect(),
        phi: {
            let mut m: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
            for (x, y, img) in g.phi_entries() {
                m.entry(g.name(x).into())
                    .or_default()
                    .push((g.name(y).into(), g.name(img).into()));
            }
            m
        },
    };
    serde_json::to_string_pretty(&file).expect("graph serialization")
}
