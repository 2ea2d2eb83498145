//! Generator mini-language: `torus:d=2,N=3`, `petersen`, `cycle:n=5`,
//! `dicycle:n=4`, `complete:n=4`, `path1`, `edge`, `random:n=6,seed=7`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    build_torus, complete, cycle, directed_cycle, petersen, random_digraph, single_arc, symmetrize, Digraph,
    RandomDigraphSpec,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSpec {
    Torus {
        d: usize,
        side: usize,
    },
    Petersen,
    Cycle {
        n: usize,
    },
    DirectedCycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// The single arc `(0, 1)`.
    Path1,
    /// The symmetrized edge `{0, 1}`.
    Edge,
    Random {
        n: usize,
        seed: u64,
    },
}

fn parse_params(name: &str, body: &str) -> Result<BTreeMap<String, u64>> {
    let mut out = BTreeMap::new();
    for item in body.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("{name}: expected key=value, got `{item}`")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{name}: `{v}` is not a nonnegative integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn take(params: &mut BTreeMap<String, u64>, name: &str, key: &str) -> Result<u64> {
    params
        .remove(key)
        .ok_or_else(|| Error::InvalidInput(format!("{name}: missing parameter `{key}`")))
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, body) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut p = parse_params(name, body)?;
        let spec = match name {
            "torus" => GraphSpec::Torus {
                d: take(&mut p, name, "d")? as usize,
                side: take(&mut p, name, "N")? as usize,
            },
            "petersen" => GraphSpec::Petersen,
            "cycle" => GraphSpec::Cycle {
                n: take(&mut p, name, "n")? as usize,
            },
            "dicycle" => GraphSpec::DirectedCycle {
                n: take(&mut p, name, "n")? as usize,
            },
            "complete" => GraphSpec::Complete {
                n: take(&mut p, name, "n")? as usize,
            },
            "path1" => GraphSpec::Path1,
            "edge" => GraphSpec::Edge,
            "random" => GraphSpec::Random {
                n: take(&mut p, name, "n")? as usize,
                seed: take(&mut p, name, "seed")?,
            },
            _ => return Err(Error::InvalidInput(format!("unknown graph generator `{name}`"))),
        };
        if let Some(k) = p.keys().next() {
            return Err(Error::InvalidInput(format!("{name}: unknown parameter `{k}`")));
        }
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Torus { d, side } => write!(f, "torus:d={d},N={side}"),
            GraphSpec::Petersen => write!(f, "petersen"),
            GraphSpec::Cycle { n } => write!(f, "cycle:n={n}"),
            GraphSpec::DirectedCycle { n } => write!(f, "dicycle:n={n}"),
            GraphSpec::Complete { n } => write!(f, "complete:n={n}"),
            GraphSpec::Path1 => write!(f, "path1"),
            GraphSpec::Edge => write!(f, "edge"),
            GraphSpec::Random { n, seed } => write!(f, "random:n={n},seed={seed}"),
        }
    }
}

impl GraphSpec {
    /// Builds the digraph. `None` rates default to 1, except that random
    /// digraphs then draw per-arc and per-vertex rates from `(0.1, 2)`.
    pub fn build(&self, beta: Option<f64>, delta: Option<f64>) -> Result<Digraph> {
        let (b, d) = (beta.unwrap_or(1.0), delta.unwrap_or(1.0));
        match *self {
            GraphSpec::Torus { d: dim, side } => build_torus(dim, side, b, d),
            GraphSpec::Petersen => petersen(b, d),
            GraphSpec::Cycle { n } => cycle(n, b, d),
            GraphSpec::DirectedCycle { n } => directed_cycle(n, b, d),
            GraphSpec::Complete { n } => complete(n, b, d),
            GraphSpec::Path1 => single_arc(b, d),
            GraphSpec::Edge => symmetrize(2, &[(0, 1)], b, d),
            GraphSpec::Random { n, seed } => {
                let mut spec = RandomDigraphSpec::new(n);
                if let Some(b) = beta {
                    spec.beta_range = (b, b);
                }
                if let Some(d) = delta {
                    spec.delta_range = (d, d);
                }
                random_digraph(spec, &mut ChaCha8Rng::seed_from_u64(seed))
            }
        }
    }
}

/// Named fixtures shared by tests, the command line and the benchmarks.
pub fn corpus() -> Vec<(String, Digraph)> {
    let fixed: [(&str, f64, f64); 10] = [
        ("path1", 1.0, 1.0),
        ("edge", 2.0, 1.0),
        ("dicycle:n=3", 0.7, 0.4),
        ("dicycle:n=4", 1.3, 0.9),
        ("cycle:n=4", 0.2, 1.0),
        ("cycle:n=5", 0.6, 0.5),
        ("complete:n=3", 0.5, 0.3),
        ("complete:n=4", 0.4, 0.8),
        ("petersen", 0.3, 0.7),
        ("torus:d=2,N=3", 0.25, 1.1),
    ];
    let mut out: Vec<(String, Digraph)> = fixed
        .iter()
        .map(|&(s, b, d)| {
            let spec: GraphSpec = s.parse().expect("corpus spec");
            (
                format!("{spec} beta={b} delta={d}"),
                spec.build(Some(b), Some(d)).expect("corpus graph"),
            )
        })
        .collect();
    for seed in 1..=4 {
        let spec = GraphSpec::Random {
            n: 4 + seed as usize,
            seed,
        };
        out.push((spec.to_string(), spec.build(None, None).expect("corpus graph")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "torus:d=2,N=3",
            "petersen",
            "cycle:n=5",
            "dicycle:n=4",
            "complete:n=4",
            "path1",
            "edge",
            "random:n=6,seed=7",
        ] {
            let spec: GraphSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        for s in ["grid:n=3", "cycle", "cycle:n=x", "cycle:n=4,k=2", "torus:d=1"] {
            assert!(s.parse::<GraphSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn random_is_seeded() {
        let spec: GraphSpec = "random:n=6,seed=3".parse().unwrap();
        assert_eq!(spec.build(None, None).unwrap(), spec.build(None, None).unwrap());
    }

    #[test]
    fn corpus_is_valid() {
        let c = corpus();
        assert_eq!(c.len(), 14);
        assert!(c.iter().all(|(_, g)| g.n_vertices() <= 10));
    }
}
