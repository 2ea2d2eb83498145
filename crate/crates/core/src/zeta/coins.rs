//! Standard `2d x 2d` coins.

use nalgebra::QR;
use num_complex::Complex64;
use rand::Rng;

use crate::linalg::CMatrix;

pub fn identity_coin(d: usize) -> CMatrix {
    CMatrix::identity(2 * d, 2 * d)
}

/// Grover diffusion `(2 / 2d) 𝟙 - I`, real orthogonal.
pub fn grover_coin(d: usize) -> CMatrix {
    let n = 2 * d;
    CMatrix::from_fn(n, n, |a, b| {
        let v = 2.0 / n as f64 - if a == b { 1.0 } else { 0.0 };
        Complex64::new(v, 0.0)
    })
}

/// Unitary factor of the QR decomposition of a matrix with uniform complex
/// entries, phases fixed so that `R` has a positive diagonal.
pub fn random_unitary_coin(d: usize, rng: &mut impl Rng) -> CMatrix {
    let n = 2 * d;
    let x = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let qr = QR::new(x);
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let p = r[(j, j)];
        if p.norm() > 0.0 {
            let phase = p / p.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Column-stochastic coin with entries drawn from `(0.05, 1)` before
/// normalization: a correlated random walk.
pub fn random_stochastic_coin(d: usize, rng: &mut impl Rng) -> CMatrix {
    let n = 2 * d;
    let mut x = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(0.05..1.0), 0.0));
    for j in 0..n {
        let s: f64 = x.column(j).iter().map(|z| z.re).sum();
        for i in 0..n {
            x[(i, j)] /= s;
        }
    }
    x
}

/// Reciprocal walk zeta of the identity coin, `(1 - u^N)^(2d/N)` on the
/// principal branch.
pub fn identity_coin_zeta(d: usize, side: usize, u: Complex64) -> Complex64 {
    ((1.0 - u.powi(side as i32)).ln() * (2.0 * d as f64 / side as f64)).exp()
}
