//! Constant-rate specializations (`β_e = β`, `δ_v = δ`).
//!
//! With `γ = β + 2δ`, `ε = 2δ` and `G = (1 + γu)² - β²u² = (1 + 2δu)(1 + 2(β + δ)u)`:
//!
//! * general digraph:
//!   `(1 + γu)^(M0-N) G^(M1-N) det((1 + δu)(1 + γu)G I - βu(1 + εu)G A0ᵀ
//!    - βu(1 + εu)(1 + γu)² A1 + β²u²(1 + εu)(1 + γu) D1)`
//! * symmetric digraph of a graph with `m` edges:
//!   `G^(m-N) det((1 + δu)G I - βu(1 + 2δu)(1 + γu) A + β²u²(1 + 2δu) D)`
//! * `d`-regular graph:
//!   `G^(m-N) det(c(u) I - βu(1 + 2δu)(1 + γu) A)`, `c = (1 + δu)G + dβ²u²(1 + 2δu)`.
//!
//! `A0` marks arcs without inverse, `A1` arcs with one, `D1` counts the
//! out-arcs of each vertex that have an inverse. [`Transcription::Printed`]
//! evaluates the coefficients as they are usually quoted:
//! `G = 1 + 2(β + 2δ)u + 4δ(δ + 1)u²`, the last general-digraph term as
//! `-β(1 + γu) deg⁺`, and the regular-graph diagonal
//! `1 + (2β + 5δ)u + (2δ(β + 4δ + 2) + dβ²)u² + 2δ(2δ(δ + 1) + dβ²)u³`
//! with no `u` on the adjacency term.

use num_complex::Complex64;

use super::check_pole;
use crate::error::{Error, Result};
use crate::graph::{Arc, Digraph};
use crate::linalg::{det_complex, CMatrix};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorollaryKind {
    GeneralDigraph,
    Undirected,
    Regular,
}

impl CorollaryKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::GeneralDigraph => "general-digraph",
            Self::Undirected => "undirected",
            Self::Regular => "regular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transcription {
    Rederived,
    Printed,
}

/// `G(u)` under constant rates.
pub fn constant_rate_g(beta: f64, delta: f64, t: Transcription) -> Polynomial {
    let c2 = match t {
        Transcription::Rederived => 4.0 * delta * (beta + delta),
        Transcription::Printed => 4.0 * delta * (delta + 1.0),
    };
    Polynomial::new(vec![1.0, 2.0 * (beta + 2.0 * delta), c2])
}

/// The scalar diagonal `c(u)` of the regular-graph form.
pub fn regular_diagonal(beta: f64, delta: f64, d: usize, t: Transcription) -> Polynomial {
    let d = d as f64;
    let db2 = d * beta * beta;
    let (c2, c3) = match t {
        Transcription::Rederived => (
            2.0 * delta * (3.0 * beta + 4.0 * delta) + db2,
            2.0 * delta * (2.0 * delta * (beta + delta) + db2),
        ),
        Transcription::Printed => (
            2.0 * delta * (beta + 4.0 * delta + 2.0) + db2,
            2.0 * delta * (2.0 * delta * (delta + 1.0) + db2),
        ),
    };
    Polynomial::new(vec![1.0, 2.0 * beta + 5.0 * delta, c2, c3])
}

struct Parts {
    a0: CMatrix,
    a1: CMatrix,
    paired_out: Vec<f64>,
    out_degree: Vec<f64>,
    m0: i64,
    m1: i64,
}

fn parts(g: &Digraph) -> Parts {
    let n = g.n_vertices();
    let zero = Complex64::new(0.0, 0.0);
    let mut p = Parts {
        a0: CMatrix::from_element(n, n, zero),
        a1: CMatrix::from_element(n, n, zero),
        paired_out: vec![0.0; n],
        out_degree: vec![0.0; n],
        m0: 0,
        m1: 0,
    };
    for a in g.arcs() {
        p.out_degree[a.origin] += 1.0;
        if g.has_arc(Arc::new(a.terminus, a.origin)) {
            p.a1[(a.origin, a.terminus)] = Complex64::new(1.0, 0.0);
            p.paired_out[a.origin] += 1.0;
            p.m1 += 1;
        } else {
            p.a0[(a.origin, a.terminus)] = Complex64::new(1.0, 0.0);
            p.m0 += 1;
        }
    }
    p.m1 /= 2;
    p
}

fn mismatch(kind: CorollaryKind, reason: &str) -> Error {
    Error::StructureMismatch {
        kind: kind.name().into(),
        reason: reason.into(),
    }
}

fn cpow(z: Complex64, k: i64) -> Complex64 {
    z.powi(k as i32)
}

/// Constant-rate factored form of `det(I - u𝒜)`, re-derived coefficients.
pub fn corollary_eval(kind: CorollaryKind, g: &Digraph, beta: f64, delta: f64, u: Complex64) -> Result<Complex64> {
    corollary_eval_with(kind, g, beta, delta, u, Transcription::Rederived)
}

pub fn corollary_eval_with(
    kind: CorollaryKind,
    g: &Digraph,
    beta: f64,
    delta: f64,
    u: Complex64,
    t: Transcription,
) -> Result<Complex64> {
    for (what, v) in [("beta", beta), ("delta", delta)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveRate {
                what: what.into(),
                value: v,
            });
        }
    }
    let n = g.n_vertices();
    let p = parts(g);
    let gamma = beta + 2.0 * delta;
    let one_g = 1.0 + gamma * u;
    let one_e = 1.0 + 2.0 * delta * u;
    let one_d = 1.0 + delta * u;
    let gu = constant_rate_g(beta, delta, t).eval_complex(u);
    let mut x;
    let pre;
    match kind {
        CorollaryKind::GeneralDigraph => {
            check_pole(one_g, || "1 + γ u".into(), u)?;
            check_pole(gu, || "G".into(), u)?;
            let (c0, c1) = (beta * u * one_e * gu, beta * u * one_e * one_g * one_g);
            x = p.a0.transpose().map(|v| -c0 * v) - p.a1.map(|v| c1 * v);
            for i in 0..n {
                let diag = match t {
                    Transcription::Rederived => beta * beta * u * u * one_e * one_g * p.paired_out[i],
                    Transcription::Printed => -beta * one_g * p.out_degree[i],
                };
                x[(i, i)] += one_d * one_g * gu + diag;
            }
            pre = cpow(one_g, p.m0 - n as i64) * cpow(gu, p.m1 - n as i64);
        }
        CorollaryKind::Undirected => {
            if p.m0 != 0 {
                return Err(mismatch(kind, "some arcs have no inverse"));
            }
            check_pole(gu, || "G".into(), u)?;
            x = p.a1.map(|v| -beta * u * one_e * one_g * v);
            for i in 0..n {
                x[(i, i)] += one_d * gu + beta * beta * u * u * one_e * p.paired_out[i];
            }
            pre = cpow(gu, p.m1 - n as i64);
        }
        CorollaryKind::Regular => {
            if p.m0 != 0 {
                return Err(mismatch(kind, "some arcs have no inverse"));
            }
            let d = g
                .regular_degree()
                .ok_or_else(|| mismatch(kind, "vertex degrees differ"))?;
            check_pole(gu, || "G".into(), u)?;
            let c = regular_diagonal(beta, delta, d, t).eval_complex(u);
            let coef = match t {
                Transcription::Rederived => beta * u * one_e * one_g,
                Transcription::Printed => beta * one_e * one_g,
            };
            x = p.a1.map(|v| -coef * v);
            for i in 0..n {
                x[(i, i)] += c;
            }
            pre = cpow(gu, p.m1 - n as i64);
        }
    }
    Ok(pre * det_complex(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, directed_cycle, MetzlerAssembly};
    use crate::linalg::{pencil, to_complex};

    fn direct(g: &Digraph, u: Complex64) -> Complex64 {
        let asm = MetzlerAssembly::from_digraph(g).unwrap();
        det_complex(&pencil(&to_complex(&asm.a_cal), u))
    }

    #[test]
    fn g_factorizes() {
        let (b, d) = (0.7, 0.3);
        let g = constant_rate_g(b, d, Transcription::Rederived);
        let f = &Polynomial::linear(2.0 * d) * &Polynomial::linear(2.0 * (b + d));
        for k in 0..3 {
            assert!((g.coeff(k) - f.coeff(k)).abs() < 1e-15);
        }
    }

    #[test]
    fn printed_g_agrees_only_at_unit_beta() {
        let a = constant_rate_g(1.0, 0.4, Transcription::Rederived);
        let b = constant_rate_g(1.0, 0.4, Transcription::Printed);
        assert_eq!(a, b);
        assert_ne!(
            constant_rate_g(2.0, 0.4, Transcription::Rederived),
            constant_rate_g(2.0, 0.4, Transcription::Printed)
        );
    }

    #[test]
    fn k3_matches_direct() {
        let g = complete(3, 1.0, 1.0).unwrap();
        let u = Complex64::new(0.05, 0.0);
        let want = direct(&g, u);
        for kind in [
            CorollaryKind::GeneralDigraph,
            CorollaryKind::Undirected,
            CorollaryKind::Regular,
        ] {
            let got = corollary_eval(kind, &g, 1.0, 1.0, u).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm(), "{kind:?}");
        }
    }

    #[test]
    fn directed_cycle_matches_direct() {
        let g = directed_cycle(3, 2.0, 1.0).unwrap();
        let u = Complex64::new(0.1, 0.0);
        let got = corollary_eval(CorollaryKind::GeneralDigraph, &g, 2.0, 1.0, u).unwrap();
        let want = direct(&g, u);
        assert!((got - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn mixed_digraph_matches_direct() {
        let arcs = [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (0, 3), (3, 0)]
            .iter()
            .map(|&p| Arc::from(p))
            .collect();
        let (b, d) = (1.6, 0.45);
        let g = Digraph::with_constant_rates(4, arcs, b, d).unwrap();
        for u in [Complex64::new(0.07, 0.0), Complex64::new(-0.1, 0.3)] {
            let got = corollary_eval(CorollaryKind::GeneralDigraph, &g, b, d, u).unwrap();
            let want = direct(&g, u);
            assert!((got - want).norm() < 1e-11 * want.norm(), "{u}");
        }
    }

    #[test]
    fn printed_regular_form_fails_off_unit_beta() {
        let g = cycle(5, 0.6, 0.3).unwrap();
        let u = Complex64::new(0.1, 0.0);
        let want = direct(&g, u);
        let got = corollary_eval_with(CorollaryKind::Regular, &g, 0.6, 0.3, u, Transcription::Printed).unwrap();
        assert!((got - want).norm() > 1e-3 * want.norm());
    }

    #[test]
    fn zero_u_gives_one() {
        let g = cycle(4, 1.0, 1.0).unwrap();
        let v = corollary_eval(CorollaryKind::Regular, &g, 1.0, 1.0, Complex64::new(0.0, 0.0)).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }

    #[test]
    fn structure_checked() {
        let g = directed_cycle(3, 1.0, 1.0).unwrap();
        let u = Complex64::new(0.1, 0.0);
        assert!(matches!(
            corollary_eval(CorollaryKind::Undirected, &g, 1.0, 1.0, u),
            Err(Error::StructureMismatch { .. })
        ));
    }
}
