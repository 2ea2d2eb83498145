//! Standard digraphs: symmetric digraphs of undirected graphs, tori,
//! cycles, the Petersen graph and random weakly connected digraphs.

use rand::Rng;

use super::{Arc, Digraph};
use crate::error::{Error, Result};

/// Symmetric digraph of an undirected simple graph: arcs `(u, v), (v, u)`
/// for every edge, in edge-list order.
pub fn symmetrize(n: usize, edges: &[(usize, usize)], beta: f64, delta: f64) -> Result<Digraph> {
    let arcs = edges
        .iter()
        .flat_map(|&(u, v)| [Arc::new(u, v), Arc::new(v, u)])
        .collect();
    Digraph::with_constant_rates(n, arcs, beta, delta)
}

/// Row-major index of torus coordinates `(x_1, ..., x_d)`.
pub fn torus_index(coords: &[usize], side: usize) -> usize {
    coords.iter().fold(0, |acc, &x| acc * side + x)
}

pub fn torus_coords(mut index: usize, d: usize, side: usize) -> Vec<usize> {
    let mut coords = vec![0; d];
    for c in coords.iter_mut().rev() {
        *c = index % side;
        index /= side;
    }
    coords
}

/// Symmetric digraph of the torus `T^d_N`: `N^d` vertices, `2 d N^d` arcs.
///
/// `N = 2` would need parallel edges and is rejected.
pub fn build_torus(d: usize, side: usize, beta: f64, delta: f64) -> Result<Digraph> {
    if d == 0 || side < 3 {
        return Err(Error::InvalidInput(format!(
            "torus needs d >= 1 and N >= 3, got d = {d}, N = {side}"
        )));
    }
    let n = side
        .checked_pow(d as u32)
        .ok_or_else(|| Error::InvalidInput("torus too large".into()))?;
    let mut edges = Vec::with_capacity(d * n);
    for v in 0..n {
        let coords = torus_coords(v, d, side);
        for j in 0..d {
            let mut next = coords.clone();
            next[j] = (next[j] + 1) % side;
            edges.push((v, torus_index(&next, side)));
        }
    }
    symmetrize(n, &edges, beta, delta)
}

/// Undirected cycle `C_n` as a symmetric digraph.
pub fn cycle(n: usize, beta: f64, delta: f64) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    symmetrize(n, &edges, beta, delta)
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize, beta: f64, delta: f64) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("directed cycle needs n >= 2, got {n}")));
    }
    let arcs = (0..n).map(|v| Arc::new(v, (v + 1) % n)).collect();
    Digraph::with_constant_rates(n, arcs, beta, delta)
}

/// Complete graph `K_n` as a symmetric digraph.
pub fn complete(n: usize, beta: f64, delta: f64) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("complete graph needs n >= 2, got {n}")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    symmetrize(n, &edges, beta, delta)
}

/// Petersen graph: outer 5-cycle, spokes, inner pentagram.
pub fn petersen(beta: f64, delta: f64) -> Result<Digraph> {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    symmetrize(10, &edges, beta, delta)
}

/// The single arc `(0, 1)`.
pub fn single_arc(beta: f64, delta: f64) -> Result<Digraph> {
    Digraph::with_constant_rates(2, vec![Arc::new(0, 1)], beta, delta)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomDigraphSpec {
    pub n: usize,
    /// Probability of each extra ordered pair becoming an arc.
    pub arc_prob: f64,
    /// Rates are drawn uniformly from this open interval.
    pub beta_range: (f64, f64),
    pub delta_range: (f64, f64),
}

impl RandomDigraphSpec {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            arc_prob: 0.3,
            beta_range: (0.1, 2.0),
            delta_range: (0.1, 2.0),
        }
    }

    pub fn constant_rates(mut self, beta: f64, delta: f64) -> Self {
        self.beta_range = (beta, beta);
        self.delta_range = (delta, delta);
        self
    }
}

fn draw(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..hi)
    }
}

/// Random weakly connected digraph.
///
/// A random recursive tree provides connectivity; each tree edge becomes one
/// arc in a random direction or an inverse pair. Every other ordered pair is
/// added independently with probability `arc_prob`.
pub fn random_digraph(spec: RandomDigraphSpec, rng: &mut impl Rng) -> Result<Digraph> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::InvalidInput(format!("random digraph needs n >= 2, got {n}")));
    }
    let mut present = vec![false; n * n];
    let mut arcs = Vec::new();
    let mut add = |a: Arc, arcs: &mut Vec<Arc>| {
        if !present[a.origin * n + a.terminus] {
            present[a.origin * n + a.terminus] = true;
            arcs.push(a);
        }
    };
    for v in 1..n {
        let p = rng.random_range(0..v);
        match rng.random_range(0..3) {
            0 => add(Arc::new(p, v), &mut arcs),
            1 => add(Arc::new(v, p), &mut arcs),
            _ => {
                add(Arc::new(p, v), &mut arcs);
                add(Arc::new(v, p), &mut arcs);
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random::<f64>() < spec.arc_prob {
                add(Arc::new(u, v), &mut arcs);
            }
        }
    }
    let beta = (0..arcs.len()).map(|_| draw(rng, spec.beta_range)).collect();
    let delta = (0..n).map(|_| draw(rng, spec.delta_range)).collect();
    Digraph::new(n, arcs, beta, delta)
}
