//! Ihara zeta of an undirected graph: edge-matrix and vertex forms, and the
//! trace-series expansion of its logarithm.

use crate::error::{Error, Result};
use crate::graph::symmetrize;
use crate::linalg::{det_real, eigenvalues_real, pencil_real, RMatrix};

/// Largest truncation order accepted by [`backtrackless_series_check`].
pub const MAX_SERIES_ORDER: usize = 24;

/// `B - J0` over arcs `2i = (u_i, v_i)`, `2i + 1 = (v_i, u_i)`.
pub fn edge_matrix(n: usize, edges: &[(usize, usize)]) -> Result<RMatrix> {
    symmetrize(n, edges, 1.0, 1.0)?;
    let arcs: Vec<(usize, usize)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let m = arcs.len();
    Ok(RMatrix::from_fn(m, m, |e, f| {
        if arcs[e].1 == arcs[f].0 && f != (e ^ 1) {
            1.0
        } else {
            0.0
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IharaValues {
    /// `det(I - u(B - J0))`.
    pub edge_form: f64,
    /// `(1 - u²)^(m - n) det(I - uA + u²(D - I))`.
    pub bass_form: f64,
}

/// Reciprocal Ihara zeta evaluated both ways.
pub fn ihara_zeta_recip(n: usize, edges: &[(usize, usize)], u: f64) -> Result<IharaValues> {
    let h = edge_matrix(n, edges)?;
    let edge_form = det_real(&pencil_real(&h, u));
    let mut x = RMatrix::identity(n, n) * (1.0 - u * u);
    for &(a, b) in edges {
        x[(a, b)] -= u;
        x[(b, a)] -= u;
        x[(a, a)] += u * u;
        x[(b, b)] += u * u;
    }
    let bass_form = (1.0 - u * u).powi(edges.len() as i32 - n as i32) * det_real(&x);
    Ok(IharaValues { edge_form, bass_form })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCheck {
    /// `exp(Σ_{m ≤ L} tr((B - J0)^m) u^m / m)`.
    pub series: f64,
    /// `1 / det(I - u(B - J0))`.
    pub zeta: f64,
    /// `tr((B - J0)^m)` for `m = 1..=L`.
    pub traces: Vec<f64>,
    /// `|u| ρ(B - J0)`.
    pub ratio: f64,
    /// Geometric estimate of the omitted tail of the logarithm.
    pub tail_bound: f64,
}

/// Truncated trace series of `log ζ` against the determinant.
pub fn backtrackless_series_check(n: usize, edges: &[(usize, usize)], u: f64, order: usize) -> Result<SeriesCheck> {
    if order == 0 || order > MAX_SERIES_ORDER {
        return Err(Error::InvalidInput(format!(
            "series order must be in 1..={MAX_SERIES_ORDER}, got {order}"
        )));
    }
    let h = edge_matrix(n, edges)?;
    let rho = eigenvalues_real(&h, "B - J0")?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let ratio = u.abs() * rho;
    if ratio >= 1.0 {
        return Err(Error::OutsideConvergence { u, product: ratio });
    }
    let mut power = h.clone();
    let mut traces = Vec::with_capacity(order);
    let mut log = 0.0;
    for m in 1..=order {
        if m > 1 {
            power = &power * &h;
        }
        let t = power.trace();
        traces.push(t);
        log += t * u.powi(m as i32) / m as f64;
    }
    let tail_bound = h.nrows() as f64 * ratio.powi(order as i32 + 1) / ((order + 1) as f64 * (1.0 - ratio));
    Ok(SeriesCheck {
        series: log.exp(),
        zeta: 1.0 / det_real(&pencil_real(&h, u)),
        traces,
        ratio,
        tail_bound,
    })
}

/// `(det(I_r - AB), det(I_s - BA))`.
pub fn weinstein_aronszajn_check(a: &RMatrix, b: &RMatrix) -> Result<(f64, f64)> {
    if a.ncols() != b.nrows() || a.nrows() != b.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, B is {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let ab = RMatrix::identity(a.nrows(), a.nrows()) - a * b;
    let ba = RMatrix::identity(b.nrows(), b.nrows()) - b * a;
    Ok((det_real(&ab), det_real(&ba)))
}
