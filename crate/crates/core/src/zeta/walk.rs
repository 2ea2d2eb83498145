//! Coin walks: `(M_A Ψ)(x) = Σ_j P_2j A Ψ(x + e_j) + P_2j+1 A Ψ(x - e_j)`
//! with 0-based coin components, and their Fourier blocks
//! `M̂(w) = Σ_j e^{i w_j} P_2j A + e^{-i w_j} P_2j+1 A`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{ZetaMethod, ZetaParams, ZetaValue};
use crate::error::{Error, Result};
use crate::graph::{torus_coords, torus_index};
use crate::linalg::{det_complex, eigenvalues_complex, pencil, CMatrix};

/// Largest walk operator built densely.
const MAX_WALK_DIM: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct CoinWalk {
    d: usize,
    side: usize,
    coin: CMatrix,
}

impl CoinWalk {
    pub fn new(d: usize, side: usize, coin: CMatrix) -> Result<Self> {
        if d == 0 || side < 2 {
            return Err(Error::InvalidInput(format!(
                "coin walk needs d >= 1 and N >= 2, got d = {d}, N = {side}"
            )));
        }
        if coin.nrows() != 2 * d || coin.ncols() != 2 * d {
            return Err(Error::DimensionMismatch(format!(
                "coin must be {0}x{0}, got {1}x{2}",
                2 * d,
                coin.nrows(),
                coin.ncols()
            )));
        }
        if coin.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("coin has non-finite entries".into()));
        }
        Ok(Self { d, side, coin })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn coin(&self) -> &CMatrix {
        &self.coin
    }

    pub fn vertices(&self) -> usize {
        self.side.pow(self.d as u32)
    }

    pub fn dim(&self) -> usize {
        2 * self.d * self.vertices()
    }

    /// Projection onto coin component `j` (0-based).
    pub fn projection(&self, j: usize) -> CMatrix {
        let n = 2 * self.d;
        CMatrix::from_fn(n, n, |a, b| {
            if a == j && b == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Spectral norm of the coin.
    fn coin_norm(&self) -> Result<f64> {
        let gram = self.coin.adjoint() * &self.coin;
        Ok(eigenvalues_complex(&gram, "coin Gram matrix")?
            .iter()
            .map(|z| z.re.max(0.0))
            .fold(0.0, f64::max)
            .sqrt())
    }
}

/// The `2dN^d x 2dN^d` operator, indexed `vertex * 2d + component`.
pub fn walk_operator(w: &CoinWalk) -> Result<CMatrix> {
    let dim = w.dim();
    if dim > MAX_WALK_DIM {
        return Err(Error::TooLarge {
            what: "walk operator".into(),
            size: dim,
            limit: MAX_WALK_DIM,
        });
    }
    let (d, side, c) = (w.d, w.side, 2 * w.d);
    let mut m = CMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for x in 0..w.vertices() {
        let coords = torus_coords(x, d, side);
        for j in 0..d {
            for (s, step) in [(2 * j, 1), (2 * j + 1, side - 1)] {
                let mut y = coords.clone();
                y[j] = (y[j] + step) % side;
                let src = torus_index(&y, side);
                for b in 0..c {
                    m[(x * c + s, src * c + b)] += w.coin[(s, b)];
                }
            }
        }
    }
    Ok(m)
}

/// `M̂(w)` at the wave vector `w`.
pub fn fourier_symbol(walk: &CoinWalk, w: &[f64]) -> CMatrix {
    assert_eq!(w.len(), walk.d, "wave vector length");
    let c = 2 * walk.d;
    CMatrix::from_fn(c, c, |s, b| {
        let j = s / 2;
        let phase = if s % 2 == 0 { w[j] } else { -w[j] };
        Complex64::from_polar(1.0, phase) * walk.coin[(s, b)]
    })
}

/// Reciprocal walk zeta by the full determinant and by the Fourier blocks.
///
/// Logarithms are continued from `u = 0`: the direct one sums
/// `log(1 - uλ)` over the eigenvalues of `M_A`, the Fourier one sums the
/// principal logarithms of the block determinants. These agree when every
/// block determinant has argument below `π`, which holds when
/// `2d asin(|u| |A|) < π`; larger `|u|` is refused.
pub fn walk_zeta(w: &CoinWalk, u: Complex64) -> Result<(ZetaValue, ZetaValue)> {
    let rho = u.norm() * w.coin_norm()?;
    if rho >= 1.0 || 2.0 * w.d as f64 * rho.asin() >= PI {
        return Err(Error::BranchAmbiguity { u_abs: u.norm() });
    }
    let params = ZetaParams {
        d: w.d,
        side: w.side,
        beta: None,
        delta: None,
        u,
    };
    let nv = w.vertices() as f64;

    let m = walk_operator(w)?;
    let det = det_complex(&pencil(&m, u));
    if det.norm() == 0.0 {
        return Err(Error::Singular { u: u.to_string() });
    }
    let log: Complex64 = eigenvalues_complex(&m, "walk operator")?
        .iter()
        .map(|l| (1.0 - u * l).ln())
        .sum();
    let mut direct = ZetaValue::from_log(log / nv, ZetaMethod::DirectDet, params.clone());
    direct.determinant = Some(det);

    let blocks: Vec<Complex64> = (0..w.vertices())
        .into_par_iter()
        .map(|k| {
            let wave: Vec<f64> = torus_coords(k, w.d, w.side)
                .iter()
                .map(|&kj| 2.0 * PI * kj as f64 / w.side as f64)
                .collect();
            det_complex(&pencil(&fourier_symbol(w, &wave), u))
        })
        .collect();
    let log_f: Complex64 = blocks.iter().map(|b| b.ln()).sum();
    let det_f = blocks.iter().product();
    let mut fourier = ZetaValue::from_log(log_f / nv, ZetaMethod::FourierProduct, params);
    fourier.determinant = Some(det_f);
    Ok((direct, fourier))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_coin_decouples() {
        let w = CoinWalk::new(1, 3, CMatrix::identity(2, 2)).unwrap();
        let m = walk_operator(&w).unwrap();
        let u = c(0.4);
        let want = (1.0 - 0.4f64.powi(3)).powi(2);
        assert!((det_complex(&pencil(&m, u)) - want).norm() < 1e-14);
    }

    #[test]
    fn swap_coin_is_stochastic() {
        let coin = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let m = walk_operator(&CoinWalk::new(1, 2, coin).unwrap()).unwrap();
        for i in 0..4 {
            let row: Complex64 = (0..4).map(|j| m[(i, j)]).sum();
            assert_eq!(row, c(1.0));
        }
    }

    #[test]
    fn identity_coin_zeta() {
        let w = CoinWalk::new(1, 4, CMatrix::identity(2, 2)).unwrap();
        let (a, b) = walk_zeta(&w, c(0.5)).unwrap();
        let want = (1.0 - 0.5f64.powi(4)).powi(2).powf(0.25);
        assert!((a.value - want).norm() < 1e-12);
        assert!((b.value - want).norm() < 1e-12);
    }

    #[test]
    fn zero_u() {
        let w = CoinWalk::new(2, 2, CMatrix::identity(4, 4)).unwrap();
        let (a, b) = walk_zeta(&w, c(0.0)).unwrap();
        assert_eq!(a.value, c(1.0));
        assert_eq!(b.value, c(1.0));
    }

    #[test]
    fn branch_refused() {
        let w = CoinWalk::new(1, 4, CMatrix::identity(2, 2)).unwrap();
        assert!(matches!(walk_zeta(&w, c(1.2)), Err(Error::BranchAmbiguity { .. })));
    }

    #[test]
    fn bad_coin_shape() {
        assert!(CoinWalk::new(2, 3, CMatrix::identity(2, 2)).is_err());
    }
}
