//! Digraph model with per-arc infection rates and per-vertex recovery rates.

mod assembly;
mod generators;
mod io;
mod ordering;
mod spec;

pub use assembly::{assemble, min_off_diagonal, proposition1_residual, MetzlerAssembly};
pub use generators::{
    build_torus, complete, cycle, directed_cycle, petersen, random_digraph, single_arc, symmetrize, torus_coords,
    torus_index, RandomDigraphSpec,
};
pub use io::{load_digraph, to_document, ArcEntry, DeltaSpec, EdgeEntry, GraphDocument};
pub use ordering::{arc_partition, ArcOrdering};
pub use spec::{corpus, GraphSpec};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
}

impl Arc {
    pub const fn new(origin: usize, terminus: usize) -> Self {
        Self { origin, terminus }
    }

    pub const fn inverse(self) -> Self {
        Self {
            origin: self.terminus,
            terminus: self.origin,
        }
    }
}

impl From<(usize, usize)> for Arc {
    fn from((origin, terminus): (usize, usize)) -> Self {
        Self { origin, terminus }
    }
}

/// A validated, weakly connected digraph without self-loops or duplicate
/// arcs, carrying infection rates `β_e > 0` on arcs and recovery rates
/// `δ_v > 0` on vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
    beta: Vec<f64>,
    delta: Vec<f64>,
    index: HashMap<Arc, usize>,
}

fn check_rate(what: impl FnOnce() -> String, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRate { what: what(), value })
    }
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<Arc>, beta: Vec<f64>, delta: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("a digraph needs at least one vertex".into()));
        }
        if beta.len() != arcs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} infection rates for {} arcs",
                beta.len(),
                arcs.len()
            )));
        }
        if delta.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} recovery rates for {} vertices",
                delta.len(),
                n
            )));
        }
        let mut index = HashMap::with_capacity(arcs.len());
        for (i, a) in arcs.iter().enumerate() {
            for v in [a.origin, a.terminus] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a.origin == a.terminus {
                return Err(Error::SelfLoop { vertex: a.origin });
            }
            if index.insert(*a, i).is_some() {
                return Err(Error::DuplicateArc {
                    origin: a.origin,
                    terminus: a.terminus,
                });
            }
        }
        for (a, &b) in arcs.iter().zip(&beta) {
            check_rate(|| format!("beta of arc ({}, {})", a.origin, a.terminus), b)?;
        }
        for (v, &d) in delta.iter().enumerate() {
            check_rate(|| format!("delta of vertex {v}"), d)?;
        }
        let components = weak_components(n, &arcs);
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(Self {
            n,
            arcs,
            beta,
            delta,
            index,
        })
    }

    pub fn with_constant_rates(n: usize, arcs: Vec<Arc>, beta: f64, delta: f64) -> Result<Self> {
        let m = arcs.len();
        Self::new(n, arcs, vec![beta; m], vec![delta; n])
    }

    /// Same arcs, every `β_e = beta` and every `δ_v = delta`.
    pub fn with_rates(&self, beta: f64, delta: f64) -> Result<Self> {
        Self::with_constant_rates(self.n, self.arcs.clone(), beta, delta)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn arc_index(&self, arc: Arc) -> Option<usize> {
        self.index.get(&arc).copied()
    }

    pub fn has_arc(&self, arc: Arc) -> bool {
        self.index.contains_key(&arc)
    }

    /// `Some((β, δ))` when every rate is the same constant.
    pub fn constant_rates(&self) -> Option<(f64, f64)> {
        let b = *self.beta.first()?;
        let d = self.delta[0];
        let same_b = self.beta.iter().all(|&x| x == b);
        let same_d = self.delta.iter().all(|&x| x == d);
        (same_b && same_d).then_some((b, d))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.origin == v).count()
    }

    /// Every arc has its inverse (the symmetric digraph of an undirected graph).
    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|a| self.has_arc(a.inverse()))
    }

    /// Common out-degree of a symmetric digraph, if it is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if !self.is_symmetric() {
            return None;
        }
        let d = self.out_degree(0);
        (1..self.n).all(|v| self.out_degree(v) == d).then_some(d)
    }

    /// 0/1 adjacency matrix with `A_{uv} = 1` iff `(u, v)` is an arc.
    pub fn adjacency(&self) -> RMatrix {
        let mut a = RMatrix::zeros(self.n, self.n);
        for arc in &self.arcs {
            a[(arc.origin, arc.terminus)] = 1.0;
        }
        a
    }

    /// Undirected edges `{u, v}` with `u < v` of a symmetric digraph.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .arcs
            .iter()
            .filter(|a| a.origin < a.terminus)
            .map(|a| (a.origin, a.terminus))
            .collect();
        edges.sort_unstable();
        edges
    }
}

fn weak_components(n: usize, arcs: &[Arc]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for a in arcs {
        let (ra, rb) = (find(&mut parent, a.origin), find(&mut parent, a.terminus));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arcs(list: &[(usize, usize)]) -> Vec<Arc> {
        list.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn two_cycle_echoes_input() {
        let g = Digraph::with_constant_rates(2, arcs(&[(0, 1), (1, 0)]), 0.5, 0.2).unwrap();
        assert_eq!(g.n_arcs(), 2);
        assert_eq!(g.beta(), &[0.5, 0.5]);
        assert_eq!(g.delta(), &[0.2, 0.2]);
        assert!(g.is_symmetric());
    }

    #[test]
    fn self_loop_rejected() {
        let err = Digraph::with_constant_rates(2, arcs(&[(0, 0), (0, 1)]), 1.0, 1.0).unwrap_err();
        assert_eq!(err, Error::SelfLoop { vertex: 0 });
    }

    #[test]
    fn duplicate_rejected() {
        let err = Digraph::with_constant_rates(2, arcs(&[(0, 1), (0, 1)]), 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::DuplicateArc { origin: 0, terminus: 1 }));
    }

    #[test]
    fn disconnected_rejected() {
        let err = Digraph::with_constant_rates(4, arcs(&[(0, 1), (1, 0), (2, 3), (3, 2)]), 1.0, 1.0).unwrap_err();
        assert_eq!(err, Error::Disconnected { components: 2 });
    }

    #[test]
    fn nonpositive_rates_rejected() {
        let err = Digraph::with_constant_rates(2, arcs(&[(0, 1)]), 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NonPositiveRate { .. }));
        let err = Digraph::with_constant_rates(2, arcs(&[(0, 1)]), 1.0, -1.0).unwrap_err();
        assert!(matches!(err, Error::NonPositiveRate { .. }));
        let err = Digraph::with_constant_rates(2, arcs(&[(0, 1)]), f64::NAN, 1.0).unwrap_err();
        assert!(matches!(err, Error::NonPositiveRate { .. }));
    }

    #[test]
    fn out_of_range_vertex() {
        let err = Digraph::with_constant_rates(2, arcs(&[(0, 2)]), 1.0, 1.0).unwrap_err();
        assert_eq!(err, Error::VertexOutOfRange { index: 2, n: 2 });
    }

    #[test]
    fn regular_degree_of_cycle() {
        let g = cycle(5, 1.0, 1.0).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        let d = directed_cycle(3, 1.0, 1.0).unwrap();
        assert_eq!(d.regular_degree(), None);
    }
}
