//! `--graph` resolution: a generator spec, or a path to a graph document.

use std::path::Path;

use metzler_core::graph::{load_digraph, GraphSpec};
use metzler_core::{Digraph, Error, Result};

#[derive(Debug, Clone)]
pub struct GraphSource {
    pub spec: Option<GraphSpec>,
    pub graph: Digraph,
}

pub fn resolve(source: &str, beta: Option<f64>, delta: Option<f64>) -> Result<GraphSource> {
    match source.parse::<GraphSpec>() {
        Ok(spec) => Ok(GraphSource {
            spec: Some(spec),
            graph: spec.build(beta, delta)?,
        }),
        Err(spec_err) => {
            let path = Path::new(source);
            if !path.is_file() {
                return Err(spec_err);
            }
            if beta.is_some() || delta.is_some() {
                return Err(Error::InvalidInput(
                    "--beta/--delta apply to generators; put rates in the graph document".into(),
                ));
            }
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
            Ok(GraphSource {
                spec: None,
                graph: load_digraph(&text)?,
            })
        }
    }
}
