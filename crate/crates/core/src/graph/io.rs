//! Graph description documents (JSON).
//!
//! ```json
//! { "n": 3, "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 2, "beta": 0.3}],
//!   "beta": 0.5, "delta": [1.0, 0.8, 1.2] }
//! ```
//!
//! Exactly one of `arcs` (`{from, to, beta?}`) or `edges` (`{u, v, beta?}`,
//! expanded to both orientations) must be present. `delta` is a scalar or a
//! per-vertex list. Indices are 0-based.

use serde::{Deserialize, Serialize};

use super::{Arc, Digraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<ArcEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcEntry {
    pub from: usize,
    pub to: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeltaSpec {
    Scalar(f64),
    PerVertex(Vec<f64>),
}

impl GraphDocument {
    pub fn into_digraph(self) -> Result<Digraph> {
        let global_beta = self.beta;
        let rate = |b: Option<f64>, what: &str| {
            b.or(global_beta)
                .ok_or_else(|| Error::Malformed(format!("no beta for {what} and no global beta")))
        };
        let (arcs, beta) = match (self.arcs, self.edges) {
            (Some(_), Some(_)) => return Err(Error::Malformed("both `arcs` and `edges` given".into())),
            (None, None) => return Err(Error::Malformed("one of `arcs` or `edges` is required".into())),
            (Some(list), None) => {
                let mut arcs = Vec::with_capacity(list.len());
                let mut beta = Vec::with_capacity(list.len());
                for a in list {
                    beta.push(rate(a.beta, &format!("arc ({}, {})", a.from, a.to))?);
                    arcs.push(Arc::new(a.from, a.to));
                }
                (arcs, beta)
            }
            (None, Some(list)) => {
                let mut arcs = Vec::with_capacity(2 * list.len());
                let mut beta = Vec::with_capacity(2 * list.len());
                for e in list {
                    let b = rate(e.beta, &format!("edge {{{}, {}}}", e.u, e.v))?;
                    arcs.push(Arc::new(e.u, e.v));
                    arcs.push(Arc::new(e.v, e.u));
                    beta.extend([b, b]);
                }
                (arcs, beta)
            }
        };
        let delta = match self.delta {
            Some(DeltaSpec::Scalar(d)) => vec![d; self.n],
            Some(DeltaSpec::PerVertex(list)) => {
                if list.len() != self.n {
                    return Err(Error::Malformed(format!(
                        "delta lists {} values for {} vertices",
                        list.len(),
                        self.n
                    )));
                }
                list
            }
            None => return Err(Error::Malformed("missing `delta`".into())),
        };
        Digraph::new(self.n, arcs, beta, delta)
    }
}

/// Parses and validates a graph description document.
pub fn load_digraph(document: &str) -> Result<Digraph> {
    let doc: GraphDocument = serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;
    doc.into_digraph()
}

/// Arc-form document reproducing `g` exactly.
pub fn to_document(g: &Digraph) -> GraphDocument {
    GraphDocument {
        n: g.n_vertices(),
        arcs: Some(
            g.arcs()
                .iter()
                .zip(g.beta())
                .map(|(a, &b)| ArcEntry {
                    from: a.origin,
                    to: a.terminus,
                    beta: Some(b),
                })
                .collect(),
        ),
        edges: None,
        beta: None,
        delta: Some(DeltaSpec::PerVertex(g.delta().to_vec())),
    }
}
