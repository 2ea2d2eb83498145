//! Metzler zeta of the torus `T^d_N` with constant rates.
//!
//! The torus is `2d`-regular with `dN^d` edges and adjacency eigenvalues
//! `2 Σ_j cos(2π k_j / N)`, so the regular-graph factorization gives
//!
//! ```text
//! (1/N^d) log det(I - u𝒜) = (d - 1) log G(u)
//!     + (1/N^d) Σ_k log(c(u) - 2βu(1 + 2δu)(1 + γu) Σ_j cos(2π k_j / N))
//! ```
//!
//! with `c` the regular-graph diagonal for degree `2d`. The `N → ∞` limit
//! replaces the sum by the integral over `[0, 2π)^d`, approximated by the
//! same sum on a `Q^d` grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{ZetaMethod, ZetaParams, ZetaValue};
use crate::error::{Error, Result};
use crate::graph::{build_torus, torus_coords, MetzlerAssembly};
use crate::linalg::{det_real, pencil_real};
use crate::polydet::{check_pole, constant_rate_g, regular_diagonal, Transcription};

/// Largest `(2d + 1) N^d` evaluated by a dense determinant.
pub const MAX_DIRECT_DIM: usize = 4000;
/// Largest quadrature grid `Q^d`.
const MAX_GRID: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrefactorExponent {
    /// `(M - N) / N^d = d - 1`.
    DMinusOne,
    /// `2d - 1`.
    TwoDMinusOne,
}

impl PrefactorExponent {
    fn value(self, d: usize) -> f64 {
        match self {
            Self::DMinusOne => d as f64 - 1.0,
            Self::TwoDMinusOne => 2.0 * d as f64 - 1.0,
        }
    }
}

/// Which prefactor exponent and which coefficients the spectral sum uses.
/// `Printed` coefficients are `G = 1 + 2(β + 2δ)u + 4δ(δ + 1)u²`,
/// `c = 1 + (2β + 5δ)u + 2(δ(β + 4δ + 2) + dβ²)u² + (4δ(δ + 1) + dβ²)u³`
/// and `2β(1 + 2δu)(1 + γu)` on the cosine sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusZetaForm {
    pub exponent: PrefactorExponent,
    pub coefficients: Transcription,
}

impl Default for TorusZetaForm {
    fn default() -> Self {
        Self {
            exponent: PrefactorExponent::DMinusOne,
            coefficients: Transcription::Rederived,
        }
    }
}

/// `log G`, and `(c, κ)` with log argument `c - κ Σ cos θ_j`.
struct Symbol {
    log_prefactor: Complex64,
    c: f64,
    kappa: f64,
}

fn symbol(d: usize, beta: f64, delta: f64, u: f64, form: TorusZetaForm) -> Result<Symbol> {
    let uc = Complex64::new(u, 0.0);
    let g = constant_rate_g(beta, delta, form.coefficients).eval(u);
    let exponent = form.exponent.value(d);
    let log_prefactor = if exponent == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        exponent * check_pole(Complex64::new(g, 0.0), || "G".into(), uc)?.ln()
    };
    let gamma = beta + 2.0 * delta;
    let (c, kappa) = match form.coefficients {
        Transcription::Rederived => (
            regular_diagonal(beta, delta, 2 * d, Transcription::Rederived).eval(u),
            2.0 * beta * u * (1.0 + 2.0 * delta * u) * (1.0 + gamma * u),
        ),
        Transcription::Printed => {
            let df = d as f64;
            let b2 = beta * beta;
            let c = 1.0
                + (2.0 * beta + 5.0 * delta) * u
                + 2.0 * (delta * (beta + 4.0 * delta + 2.0) + df * b2) * u * u
                + (4.0 * delta * (delta + 1.0) + df * b2) * u * u * u;
            (c, 2.0 * beta * (1.0 + 2.0 * delta * u) * (1.0 + gamma * u))
        }
    };
    Ok(Symbol {
        log_prefactor,
        c,
        kappa,
    })
}

fn grid_size(d: usize, q: usize) -> Result<usize> {
    match q.checked_pow(d as u32) {
        Some(n) if n <= MAX_GRID => Ok(n),
        _ => Err(Error::TooLarge {
            what: format!("grid {q}^{d}"),
            size: q.saturating_pow(d as u32),
            limit: MAX_GRID,
        }),
    }
}

/// `log G^e + (1/q^d) Σ_k log(c - κ Σ_j cos(2π k_j / q))`, summed in index order.
fn spectral_log(d: usize, q: usize, s: &Symbol, u: f64) -> Result<Complex64> {
    let count = grid_size(d, q)?;
    let cosines: Vec<f64> = (0..q).map(|k| (2.0 * PI * k as f64 / q as f64).cos()).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..count {
        let sc: f64 = torus_coords(k, d, q).iter().map(|&kj| cosines[kj]).sum();
        let arg = Complex64::new(s.c - s.kappa * sc, 0.0);
        sum += check_pole(
            arg,
            || format!("log argument at grid point {k}"),
            Complex64::new(u, 0.0),
        )?
        .ln();
    }
    Ok(s.log_prefactor + sum / count as f64)
}

fn check_rates(beta: f64, delta: f64) -> Result<()> {
    for (what, v) in [("beta", beta), ("delta", delta)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveRate {
                what: what.into(),
                value: v,
            });
        }
    }
    Ok(())
}

fn params(d: usize, side: usize, beta: f64, delta: f64, u: f64) -> ZetaParams {
    ZetaParams {
        d,
        side,
        beta: Some(beta),
        delta: Some(delta),
        u: Complex64::new(u, 0.0),
    }
}

/// Reciprocal Metzler zeta of `T^d_N` by the `(2d+1)N^d` determinant and
/// by the spectral sum.
pub fn metzler_zeta_finite(d: usize, side: usize, beta: f64, delta: f64, u: f64) -> Result<(ZetaValue, ZetaValue)> {
    metzler_zeta_finite_with(d, side, beta, delta, u, TorusZetaForm::default())
}

pub fn metzler_zeta_finite_with(
    d: usize,
    side: usize,
    beta: f64,
    delta: f64,
    u: f64,
    form: TorusZetaForm,
) -> Result<(ZetaValue, ZetaValue)> {
    check_rates(beta, delta)?;
    if d == 0 || side < 3 {
        return Err(Error::InvalidInput(format!(
            "torus needs d >= 1 and N >= 3, got d = {d}, N = {side}"
        )));
    }
    let nv = grid_size(d, side)?;
    let dim = (2 * d + 1) * nv;
    if dim > MAX_DIRECT_DIM {
        return Err(Error::TooLarge {
            what: "direct Metzler determinant".into(),
            size: dim,
            limit: MAX_DIRECT_DIM,
        });
    }
    let asm = MetzlerAssembly::from_digraph(&build_torus(d, side, beta, delta)?)?;
    let det = det_real(&pencil_real(&asm.a_cal, u));
    if det == 0.0 {
        return Err(Error::Singular { u: u.to_string() });
    }
    let det = Complex64::new(det, 0.0);
    let mut direct = ZetaValue::from_log(
        det.ln() / nv as f64,
        ZetaMethod::DirectDet,
        params(d, side, beta, delta, u),
    );
    direct.determinant = Some(det);

    let s = symbol(d, beta, delta, u, form)?;
    let log = spectral_log(d, side, &s, u)?;
    let mut spectral = ZetaValue::from_log(log, ZetaMethod::FourierProduct, params(d, side, beta, delta, u));
    spectral.determinant = Some((log * nv as f64).exp());
    Ok((direct, spectral))
}

/// `N → ∞` limit by the uniform `Q^d` Riemann sum, with
/// `|log value(Q) - log value(Q/2)|` as convergence estimate.
pub fn metzler_zeta_limit(d: usize, beta: f64, delta: f64, u: f64, q: usize) -> Result<ZetaValue> {
    check_rates(beta, delta)?;
    if d == 0 || q == 0 {
        return Err(Error::InvalidInput(format!(
            "need d >= 1 and Q >= 1, got d = {d}, Q = {q}"
        )));
    }
    let s = symbol(d, beta, delta, u, TorusZetaForm::default())?;
    // The log argument is affine in Σ cos θ_j ∈ [-d, d].
    let df = d as f64;
    let (lo, hi) = (s.c + s.kappa * df, s.c - s.kappa * df);
    if lo * hi <= 0.0 {
        let cos = (s.c / (s.kappa * df)).clamp(-1.0, 1.0);
        return Err(Error::Domain {
            theta: vec![cos.acos(); d],
        });
    }
    let log = spectral_log(d, q, &s, u)?;
    let mut z = ZetaValue::from_log(log, ZetaMethod::QuadratureLimit, params(d, q, beta, delta, u));
    if q >= 2 {
        z.convergence = Some((log - spectral_log(d, q / 2, &s, u)?).norm());
    }
    Ok(z)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    /// Real part of `(1/N^d) log det(I - u𝒜)`.
    pub log_zeta_recip: f64,
    /// Distance to the previous row.
    pub diff: Option<f64>,
    /// Distance to the quadrature limit at `reference_q`.
    pub limit_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub d: usize,
    pub reference_q: usize,
    pub reference: f64,
    pub rows: Vec<ConvergenceRow>,
}

/// Finite-`N` spectral values against the quadrature limit.
pub fn limit_convergence_table(d: usize, beta: f64, delta: f64, u: f64, sides: &[usize]) -> Result<ConvergenceTable> {
    let max_side = sides.iter().copied().max().unwrap_or(1);
    let mut reference_q = (4 * max_side).max(64).next_power_of_two();
    while reference_q > 2 && reference_q.checked_pow(d as u32).map_or(true, |n| n > MAX_GRID) {
        reference_q /= 2;
    }
    let reference = metzler_zeta_limit(d, beta, delta, u, reference_q)?.log_value.re;
    let s = symbol(d, beta, delta, u, TorusZetaForm::default())?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(sides.len());
    for &n in sides {
        if n < 3 {
            return Err(Error::InvalidInput(format!("torus side must be >= 3, got {n}")));
        }
        let v = spectral_log(d, n, &s, u)?.re;
        rows.push(ConvergenceRow {
            n,
            log_zeta_recip: v,
            diff: rows.last().map(|p| (v - p.log_zeta_recip).abs()),
            limit_gap: (v - reference).abs(),
        });
    }
    Ok(ConvergenceTable {
        d,
        reference_q,
        reference,
        rows,
    })
}
