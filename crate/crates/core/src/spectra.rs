//! Eigenvalues of 𝒜, the closed-form spectrum for regular graphs, torus
//! adjacency spectra and the decay-rate bound `-λ_max(𝒜)`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{torus_coords, Digraph, MetzlerAssembly};
use crate::linalg::{det_complex, eigenvalues_real, to_complex, RMatrix};
use crate::poly::Polynomial;
use crate::polydet::{constant_rate_g, regular_diagonal, Transcription};

/// Largest matrix accepted by [`eigenvalues`].
pub const MAX_EIGEN_DIM: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumSource {
    Numeric,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Sorted by real part descending, then imaginary part ascending.
    pub eigenvalues: Vec<Complex64>,
    pub source: SpectrumSource,
    pub dim: usize,
}

/// Real part descending, then imaginary part ascending.
pub fn spectrum_order(a: &Complex64, b: &Complex64) -> Ordering {
    b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im))
}

impl SpectrumResult {
    fn new(mut eigenvalues: Vec<Complex64>, source: SpectrumSource) -> Self {
        eigenvalues.sort_by(spectrum_order);
        let dim = eigenvalues.len();
        Self {
            eigenvalues,
            source,
            dim,
        }
    }

    pub fn max_real_part(&self) -> f64 {
        self.eigenvalues.first().map_or(f64::NEG_INFINITY, |z| z.re)
    }
}

/// Full spectrum of a real square matrix.
pub fn eigenvalues(x: &RMatrix) -> Result<SpectrumResult> {
    eigenvalues_named(x, "X")
}

/// As [`eigenvalues`], naming the matrix in error messages.
pub fn eigenvalues_named(x: &RMatrix, name: &str) -> Result<SpectrumResult> {
    if x.nrows() > MAX_EIGEN_DIM {
        return Err(Error::TooLarge {
            what: format!("eigenvalue problem {name}"),
            size: x.nrows(),
            limit: MAX_EIGEN_DIM,
        });
    }
    Ok(SpectrumResult::new(eigenvalues_real(x, name)?, SpectrumSource::Numeric))
}

/// Roots of `λ³ + a λ² + b λ + c` via the companion matrix.
fn cubic_roots(a: f64, b: f64, c: f64) -> Result<Vec<Complex64>> {
    let comp = RMatrix::from_row_slice(3, 3, &[-a, -b, -c, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    eigenvalues_real(&comp, "cubic companion")
}

/// Roots of `λ² + p λ + q`.
fn quadratic_roots(p: f64, q: f64) -> [Complex64; 2] {
    let disc = Complex64::new(p * p - 4.0 * q, 0.0).sqrt();
    [(-p + disc) / 2.0, (-p - disc) / 2.0]
}

/// Spectrum of 𝒜 for the symmetric digraph of a connected `d`-regular
/// graph (`d ≥ 2`) with constant rates, from the adjacency spectrum.
///
/// For each adjacency eigenvalue `μ` the roots of
/// `λ³ + (2β + 5δ - βμ)λ² + (2δ(3β + 4δ) + dβ² - β(β + 4δ)μ)λ
///  + 2δ(2δ(β + δ) + dβ² - β(β + 2δ)μ)`, plus the roots `-2δ` and
/// `-2(β + δ)` of `λ² + 2(β + 2δ)λ + 4δ(β + δ)`, each `m - N` times.
pub fn metzler_spectrum_closed(g: &Digraph, beta: f64, delta: f64) -> Result<SpectrumResult> {
    metzler_spectrum_closed_with(g, beta, delta, Transcription::Rederived)
}

/// As [`metzler_spectrum_closed`]; `Printed` uses `4δ(δ + 1)` in the
/// quadratic and `2δ(β + 4δ + 2)`, `2δ(δ + 1)` in the cubic.
pub fn metzler_spectrum_closed_with(g: &Digraph, beta: f64, delta: f64, t: Transcription) -> Result<SpectrumResult> {
    let mismatch = |reason: &str| Error::StructureMismatch {
        kind: "regular".into(),
        reason: reason.into(),
    };
    if !g.is_symmetric() {
        return Err(mismatch("some arcs have no inverse"));
    }
    let d = g.regular_degree().ok_or_else(|| mismatch("vertex degrees differ"))?;
    if d < 2 {
        return Err(mismatch("degree must be at least 2"));
    }
    let n = g.n_vertices();
    let m = g.n_arcs() / 2;
    let (b, dl, df) = (beta, delta, d as f64);
    let mu = eigenvalues_real(&g.adjacency(), "adjacency")?;
    let mut out = Vec::with_capacity(n + 2 * m);
    for z in &mu {
        let mu = z.re;
        let (a1, a2, a3) = match t {
            Transcription::Rederived => (
                2.0 * b + 5.0 * dl - b * mu,
                2.0 * dl * (3.0 * b + 4.0 * dl) + df * b * b - b * (b + 4.0 * dl) * mu,
                2.0 * dl * (2.0 * dl * (b + dl) + df * b * b - b * (b + 2.0 * dl) * mu),
            ),
            Transcription::Printed => (
                2.0 * b + 5.0 * dl - b * mu,
                2.0 * dl * (b + 4.0 * dl + 2.0) + df * b * b - b * (b + 4.0 * dl) * mu,
                2.0 * dl * (2.0 * dl * (dl + 1.0) + df * b * b - b * (b + 2.0 * dl) * mu),
            ),
        };
        out.extend(cubic_roots(a1, a2, a3)?);
    }
    let roots = pair_block_roots(b, dl, t);
    for _ in n..m {
        out.extend(roots);
    }
    Ok(SpectrumResult::new(out, SpectrumSource::ClosedForm))
}

/// `det(λI - 𝒜)` for the symmetric digraph of a connected `d`-regular
/// graph with constant rates:
/// `q(λ)^(m-N) det(p(λ) I - β(λ + 2δ)(λ + β + 2δ) A)`, with `q` the
/// paired-arc quadratic and `p` the cubic
/// `λ³ + (2β + 5δ)λ² + (2δ(3β + 4δ) + dβ²)λ + 2δ(2δ(β + δ) + dβ²)`.
pub fn metzler_charpoly_regular(g: &Digraph, beta: f64, delta: f64, lambda: Complex64) -> Result<Complex64> {
    metzler_charpoly_regular_with(g, beta, delta, lambda, Transcription::Rederived)
}

pub fn metzler_charpoly_regular_with(
    g: &Digraph,
    beta: f64,
    delta: f64,
    lambda: Complex64,
    t: Transcription,
) -> Result<Complex64> {
    if !g.is_symmetric() {
        return Err(Error::StructureMismatch {
            kind: "regular".into(),
            reason: "some arcs have no inverse".into(),
        });
    }
    let d = g.regular_degree().ok_or_else(|| Error::StructureMismatch {
        kind: "regular".into(),
        reason: "vertex degrees differ".into(),
    })?;
    let (n, m) = (g.n_vertices(), g.n_arcs() / 2);
    // λ^k G(1/λ) and λ^3 c(1/λ) are the reversed coefficient lists.
    let rev =
        |p: Polynomial, k: usize| -> Complex64 { (0..=k).map(|i| p.coeff(i) * lambda.powi((k - i) as i32)).sum() };
    let q = rev(constant_rate_g(beta, delta, t), 2);
    let p = rev(regular_diagonal(beta, delta, d, t), 3);
    let coef = beta * (lambda + 2.0 * delta) * (lambda + beta + 2.0 * delta);
    let mut x = to_complex(&g.adjacency()).map(|v| -coef * v);
    for i in 0..n {
        x[(i, i)] += p;
    }
    Ok(q.powi(m as i32 - n as i32) * det_complex(&x))
}

/// Roots of the paired-arc quadratic `λ² + 2(β + 2δ)λ + 4δ(β + δ)`, or of
/// `λ² + 2(β + 2δ)λ + 4δ(δ + 1)` for `Printed`. Accepts `δ = 0`.
pub fn pair_block_roots(beta: f64, delta: f64, t: Transcription) -> [Complex64; 2] {
    let q = match t {
        Transcription::Rederived => 4.0 * delta * (beta + delta),
        Transcription::Printed => 4.0 * delta * (delta + 1.0),
    };
    quadratic_roots(2.0 * (beta + 2.0 * delta), q)
}

/// `{2 Σ_j cos(2π k_j / N)}` over `k ∈ {0..N-1}^d`, descending.
pub fn torus_adjacency_spectrum(d: usize, side: usize) -> Result<Vec<f64>> {
    if d == 0 || side < 3 {
        return Err(Error::InvalidInput(format!(
            "torus needs d >= 1 and N >= 3, got d = {d}, N = {side}"
        )));
    }
    let count = side.checked_pow(d as u32).ok_or_else(|| Error::TooLarge {
        what: "torus vertex count".into(),
        size: usize::MAX,
        limit: MAX_EIGEN_DIM,
    })?;
    let mut out: Vec<f64> = (0..count)
        .map(|i| {
            torus_coords(i, d, side)
                .iter()
                .map(|&k| 2.0 * (2.0 * PI * k as f64 / side as f64).cos())
                .sum()
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayBound {
    /// Largest real part of the spectrum of 𝒜.
    pub lambda_max: f64,
    /// `-lambda_max`.
    pub bound: f64,
    /// Imaginary part of the eigenvalue attaining `lambda_max`.
    pub dominant_imag: f64,
}

pub fn decay_bound(asm: &MetzlerAssembly) -> Result<DecayBound> {
    let spec = eigenvalues_named(&asm.a_cal, "Metzler matrix")?;
    // Among eigenvalues tied for the largest real part, report the one
    // closest to the real axis.
    let lambda_max = spec.max_real_part();
    let tol = 1e-9 * lambda_max.abs().max(1.0);
    let dominant_imag = spec
        .eigenvalues
        .iter()
        .filter(|z| lambda_max - z.re <= tol)
        .map(|z| z.im.abs())
        .fold(f64::INFINITY, f64::min);
    Ok(DecayBound {
        lambda_max,
        bound: -lambda_max,
        dominant_imag,
    })
}

/// Greedy matching distance between equal-size multisets: each element of
/// `a`, in spectrum order, takes its nearest unmatched element of `b`; the
/// result is the largest matched distance. Infinite if the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a = a.to_vec();
    a.sort_by(spectrum_order);
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in &a {
        let (j, dist) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("sizes are equal");
        used[j] = true;
        worst = worst.max(dist);
    }
    worst
}
