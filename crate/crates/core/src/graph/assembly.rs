//! Incidence, pairing, non-backtracking and SIS Metzler matrices.
//!
//! All arc-indexed objects use the canonical order of [`ArcOrdering`].
//! `K`, `L`, `C` are `N x M` (rows are vertices, columns are arcs), which is
//! the only orientation that makes the block products of `𝒜` conformable:
//!
//! ```text
//!     𝒜 = [ -D        K B'             ]
//!         [ D'_2 L^T  H^T B' - B' - D'_1 - D'_2 ]
//! ```

use super::{Arc, ArcOrdering, Digraph};
use crate::error::{Error, Result};
use crate::linalg::{diag, to_real, IMatrix, RMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct MetzlerAssembly {
    pub n: usize,
    pub m: usize,
    pub m0: usize,
    pub m1: usize,
    /// Arcs in canonical order.
    pub arcs: Vec<Arc>,
    /// `β_e` in canonical order.
    pub beta: Vec<f64>,
    /// `δ_v` per vertex.
    pub delta: Vec<f64>,
    /// The `(N+M) x (N+M)` Metzler matrix.
    pub a_cal: RMatrix,
    /// Terminus incidence `C_+`: `K_{ue} = 1` iff `t(e) = u`.
    pub k: IMatrix,
    /// Origin incidence `C_-`: `L_{ue} = 1` iff `o(e) = u`.
    pub l: IMatrix,
    /// Signed incidence `C = K - L`.
    pub c: IMatrix,
    /// Pairing matrix swapping `f_k` and `f_k^{-1}`.
    pub j: IMatrix,
    /// Non-backtracking matrix: `H_{ef} = 1` iff `t(e) = o(f)` and `f != e^{-1}`.
    pub h: IMatrix,
    pub bp: RMatrix,
    pub d1p: RMatrix,
    pub d2p: RMatrix,
    /// `E = B' + D'_1 + D'_2`.
    pub e: RMatrix,
    /// Vertex recovery rates on the diagonal.
    pub dv: RMatrix,
    /// Weighted adjacency `B_{uv} = β_{(u,v)}`.
    pub bw: RMatrix,
}

pub fn assemble(g: &Digraph, ord: &ArcOrdering) -> Result<MetzlerAssembly> {
    if !ord.matches(g) {
        return Err(Error::DimensionMismatch(format!(
            "arc ordering of {} arcs does not match a digraph with {} arcs",
            ord.len(),
            g.n_arcs()
        )));
    }
    let n = g.n_vertices();
    let m = g.n_arcs();
    let (m0, m1) = (ord.m0(), ord.m1());
    let arcs = ord.canonical_arcs(g);
    let beta: Vec<f64> = ord.order().iter().map(|&i| g.beta()[i]).collect();
    let delta = g.delta().to_vec();

    let mut k = IMatrix::zeros(n, m);
    let mut l = IMatrix::zeros(n, m);
    for (e, a) in arcs.iter().enumerate() {
        k[(a.terminus, e)] = 1;
        l[(a.origin, e)] = 1;
    }
    let c = &k - &l;

    let mut j = IMatrix::zeros(m, m);
    for p in 0..m1 {
        j[(m0 + p, m0 + m1 + p)] = 1;
        j[(m0 + m1 + p, m0 + p)] = 1;
    }

    let mut h = IMatrix::zeros(m, m);
    for (ei, e) in arcs.iter().enumerate() {
        for (fi, f) in arcs.iter().enumerate() {
            if e.terminus == f.origin && *f != e.inverse() {
                h[(ei, fi)] = 1;
            }
        }
    }

    let bp = diag(&beta);
    let d1p = diag(&arcs.iter().map(|a| delta[a.origin]).collect::<Vec<_>>());
    let d2p = diag(&arcs.iter().map(|a| delta[a.terminus]).collect::<Vec<_>>());
    let e = &bp + &d1p + &d2p;
    let dv = diag(&delta);
    let mut bw = RMatrix::zeros(n, n);
    for (a, &b) in arcs.iter().zip(&beta) {
        bw[(a.origin, a.terminus)] = b;
    }

    let kf = to_real(&k);
    let lf = to_real(&l);
    let hf = to_real(&h);
    let top_right = &kf * &bp;
    let bottom_left = &d2p * lf.transpose();
    let bottom_right = hf.transpose() * &bp - &e;
    let mut a_cal = RMatrix::zeros(n + m, n + m);
    a_cal.view_mut((0, 0), (n, n)).copy_from(&(-&dv));
    a_cal.view_mut((0, n), (n, m)).copy_from(&top_right);
    a_cal.view_mut((n, 0), (m, n)).copy_from(&bottom_left);
    a_cal.view_mut((n, n), (m, m)).copy_from(&bottom_right);

    Ok(MetzlerAssembly {
        n,
        m,
        m0,
        m1,
        arcs,
        beta,
        delta,
        a_cal,
        k,
        l,
        c,
        j,
        h,
        bp,
        d1p,
        d2p,
        e,
        dv,
        bw,
    })
}

impl MetzlerAssembly {
    pub fn from_digraph(g: &Digraph) -> Result<Self> {
        assemble(g, &super::arc_partition(g))
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    /// Canonical position of the inverse arc, if present.
    pub fn inverse_of(&self, e: usize) -> Option<usize> {
        if e < self.m0 {
            None
        } else if e < self.m0 + self.m1 {
            Some(e + self.m1)
        } else {
            Some(e - self.m1)
        }
    }
}

/// `max |H - (K^T L - J)|` in exact integer arithmetic.
pub fn proposition1_residual(asm: &MetzlerAssembly) -> i64 {
    let rhs = asm.k.transpose() * &asm.l - &asm.j;
    (&asm.h - rhs).iter().map(|v| v.abs()).max().unwrap_or(0)
}

/// Smallest off-diagonal entry (`+inf` for 1x1).
pub fn min_off_diagonal(x: &RMatrix) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..x.nrows() {
        for j in 0..x.ncols() {
            if i != j {
                best = best.min(x[(i, j)]);
            }
        }
    }
    best
}
