//! Master equation of the SIS chain on subsets of infected vertices.
//!
//! The empty set is absorbing, so `Σ_v p_v(t)` decays at the rate given by
//! the spectral abscissa of the generator restricted to nonempty states.

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::{eigenvalues_real, RMatrix};

pub const MAX_EXACT_VERTICES: usize = 12;

fn check_size(g: &Digraph) -> Result<usize> {
    let n = g.n_vertices();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::TooLarge {
            what: "master equation vertex count".into(),
            size: n,
            limit: MAX_EXACT_VERTICES,
        });
    }
    Ok(n)
}

/// Calls `f(from, to, rate)` for every transition out of every state.
fn transitions(g: &Digraph, mut f: impl FnMut(usize, usize, f64)) {
    let n = g.n_vertices();
    for s in 0..1usize << n {
        for v in 0..n {
            if s >> v & 1 == 1 {
                f(s, s & !(1 << v), g.delta()[v]);
            }
        }
        for (a, &b) in g.arcs().iter().zip(g.beta()) {
            if s >> a.origin & 1 == 1 && s >> a.terminus & 1 == 0 {
                f(s, s | 1 << a.terminus, b);
            }
        }
    }
}

/// Full `2^N x 2^N` generator; state bit `v` set when `v` is infected,
/// rows are source states.
pub fn sis_generator(g: &Digraph) -> Result<RMatrix> {
    let n = check_size(g)?;
    let size = 1usize << n;
    let mut q = RMatrix::zeros(size, size);
    transitions(g, |s, t, r| {
        q[(s, t)] += r;
        q[(s, s)] -= r;
    });
    Ok(q)
}

/// `-max Re spec(Q_transient)`, the exact decay rate of `Σ_v p_v(t)`.
pub fn exact_decay(g: &Digraph) -> Result<f64> {
    let n = check_size(g)?;
    let size = (1usize << n) - 1;
    let mut q = RMatrix::zeros(size, size);
    transitions(g, |s, t, r| {
        q[(s - 1, s - 1)] -= r;
        if t != 0 {
            q[(s - 1, t - 1)] += r;
        }
    });
    let abscissa = eigenvalues_real(&q, "transient SIS generator")?
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(-abscissa)
}
