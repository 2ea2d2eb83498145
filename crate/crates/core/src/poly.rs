//! Real polynomials and polynomial determinants `det(I - uX)`.
//!
//! Coefficients of `det(I - uX)` are recovered by evaluation and
//! interpolation: the determinant is sampled at `dim + 1` equally spaced
//! points on a circle `|u| = r` and an inverse DFT yields `c_k r^k`. One
//! circle cannot resolve every coefficient when the terms `c_k r^k` span
//! many orders of magnitude, so circles are taken on a geometric grid of
//! radii and each coefficient is read off the circle where its estimated
//! rounding error is smallest. Every sample carries an estimate of its
//! absolute error; coefficient `k` read from circle `r` inherits the largest
//! of those divided by `r^k`. The scan stops once no coefficient has
//! improved for two consecutive radii.
//!
//! The sample points are rotated by a quarter step so none of them lies on
//! the real axis.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det_with_error, eigenvalues_real, max_row_sum, pencil, to_complex, RMatrix};

/// Real polynomial, coefficient `k` multiplies `u^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Trailing exact zeros are dropped; the zero polynomial has no coefficients.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.is_finite()),
            "non-finite polynomial coefficient"
        );
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![1.0])
    }

    /// `1 + a u`.
    pub fn linear(a: f64) -> Self {
        Self::new(vec![1.0, a])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn powi(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Complex roots, as eigenvalues of the companion matrix.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.coeffs[n];
        let mut comp = RMatrix::zeros(n, n);
        for j in 0..n {
            comp[(0, j)] = -self.coeffs[n - 1 - j] / lead;
        }
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        eigenvalues_real(&comp, "companion")
    }

    /// Drops trailing coefficients whose magnitude is at most `tol[k]`.
    fn trim_with(&mut self, tol: &[f64]) {
        while let Some(&c) = self.coeffs.last() {
            let k = self.coeffs.len() - 1;
            if c.abs() <= tol.get(k).copied().unwrap_or(0.0) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

/// A sampled value and the natural log of its estimated absolute error.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub value: Complex64,
    pub log_err: f64,
}

const RADIUS_STEP: f64 = 2.0;
const MAX_RADII: usize = 48;
/// Radii with no improvement for any coefficient before the scan stops.
const PATIENCE: usize = 2;
/// Log-scale decrease in error that counts as an improvement.
const MIN_GAIN: f64 = 0.05;
/// Coefficients below this multiple of their error estimate are zero.
const ZERO_FACTOR: f64 = 1e3;

/// Interpolates a polynomial of degree at most `degree_bound` from samples
/// on circles of radius `r0 * 2^s`, `s = 0, 1, ...`.
///
/// `sample` may refuse a point with [`Error::Pole`]; the whole circle is
/// then skipped. Any other error is returned.
pub fn interpolate_on_circles<F>(degree_bound: usize, r0: f64, mut sample: F) -> Result<Polynomial>
where
    F: FnMut(Complex64) -> Result<Sample>,
{
    assert!(r0 > 0.0 && r0.is_finite(), "interpolation radius must be positive");
    let m = degree_bound + 1;
    let theta0 = PI / (2.0 * m as f64);
    let mut best = vec![0.0; m];
    let mut best_log_err = vec![f64::INFINITY; m];
    let mut last_pole = None;
    let mut stale = 0;
    let mut any = false;
    let mut vals = vec![Complex64::new(0.0, 0.0); m];
    let mut log_errs = vec![f64::NEG_INFINITY; m];
    for s in 0..MAX_RADII {
        let r = r0 * RADIUS_STEP.powi(s as i32);
        let mut ok = true;
        for j in 0..m {
            let u = Complex64::from_polar(r, 2.0 * PI * j as f64 / m as f64 + theta0);
            match sample(u) {
                Ok(x) => {
                    vals[j] = x.value;
                    log_errs[j] = x.log_err;
                }
                Err(e @ Error::Pole { .. }) => {
                    last_pole = Some(e);
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !ok {
            continue;
        }
        any = true;
        let vmax = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let log_noise = log_errs
            .iter()
            .cloned()
            .fold((f64::EPSILON * vmax).max(f64::MIN_POSITIVE).ln(), f64::max);
        let mut improved = false;
        for k in 0..m {
            let log_err = log_noise - k as f64 * r.ln();
            if log_err < best_log_err[k] {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, v) in vals.iter().enumerate() {
                    let phase = -2.0 * PI * ((j * k) % m) as f64 / m as f64;
                    acc += v * Complex64::from_polar(1.0, phase);
                }
                acc /= m as f64;
                let c = acc * Complex64::from_polar(1.0, -(k as f64) * theta0);
                best[k] = c.re / r.powi(k as i32);
                if log_err < best_log_err[k] - MIN_GAIN {
                    improved = true;
                }
                best_log_err[k] = log_err;
            }
        }
        if improved {
            stale = 0;
        } else {
            stale += 1;
            if stale >= PATIENCE {
                break;
            }
        }
    }
    if !any {
        return Err(last_pole.unwrap_or_else(|| Error::InvalidInput("no usable interpolation circle".into())));
    }
    let tol: Vec<f64> = best_log_err.iter().map(|&le| ZERO_FACTOR * le.exp()).collect();
    let mut p = Polynomial::new(best);
    p.trim_with(&tol);
    Ok(p)
}

/// `det(I - uX)` as a polynomial of degree at most `dim X`.
pub fn poly_det_pencil(x: &RMatrix) -> Result<Polynomial> {
    let n = x.nrows();
    if n == 0 || x.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "pencil determinant of a {}x{} matrix",
            x.nrows(),
            x.ncols()
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let xc = to_complex(x);
    let r0 = 1.0 / (1.0 + max_row_sum(x));
    let p = interpolate_on_circles(n, r0, |u| {
        let (value, log_err) = det_with_error(&pencil(&xc, u));
        Ok(Sample { value, log_err })
    })?;
    debug_assert!((p.coeff(0) - 1.0).abs() < 1e-8);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_coeffs(p: &Polynomial, want: &[f64], tol: f64) {
        let len = p.coeffs().len().max(want.len());
        for k in 0..len {
            let w = want.get(k).copied().unwrap_or(0.0);
            assert!((p.coeff(k) - w).abs() <= tol, "coeff {k}: {} vs {w}", p.coeff(k));
        }
    }

    #[test]
    fn zero_matrix_gives_one() {
        let p = poly_det_pencil(&RMatrix::zeros(3, 3)).unwrap();
        assert_eq!(p.degree(), 0);
        assert_coeffs(&p, &[1.0], 1e-14);
    }

    #[test]
    fn identity_gives_square() {
        let p = poly_det_pencil(&RMatrix::identity(2, 2)).unwrap();
        assert_coeffs(&p, &[1.0, -2.0, 1.0], 1e-13);
    }

    #[test]
    fn two_cycle_permutation() {
        let x = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let p = poly_det_pencil(&x).unwrap();
        assert_coeffs(&p, &[1.0, 0.0, -1.0], 1e-13);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn singular_matrix_has_lower_degree() {
        let x = RMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.5, 0.1, 0.2]);
        let p = poly_det_pencil(&x).unwrap();
        assert!(p.degree() < 3, "{:?}", p.coeffs());
    }

    #[test]
    fn empty_matrix_rejected() {
        assert!(poly_det_pencil(&RMatrix::zeros(0, 0)).is_err());
    }

    #[test]
    fn wide_dynamic_range() {
        // det(I - uX) for X = diag(1e-3, 1, 1e3) = (1 - 1e-3 u)(1 - u)(1 - 1e3 u)
        let x = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1e-3, 1.0, 1e3]));
        let p = poly_det_pencil(&x).unwrap();
        let want = [1.0, -(1e-3 + 1.0 + 1e3), 1e-3 + 1.0 + 1e3, -1.0];
        for k in 0..4 {
            assert!(
                (p.coeff(k) - want[k]).abs() <= 1e-12 * want[k].abs(),
                "{k} {:?}",
                p.coeffs()
            );
        }
    }

    /// Coefficients of `det(I - uX)` for an integer matrix, exactly.
    fn leverrier(x: &[Vec<i128>]) -> Vec<i128> {
        let n = x.len();
        let mut c = vec![0i128; n + 1];
        c[n] = 1;
        let mut m = vec![vec![0i128; n]; n];
        for k in 1..=n {
            let mut next = vec![vec![0i128; n]; n];
            for i in 0..n {
                for j in 0..n {
                    next[i][j] = (0..n).map(|l| x[i][l] * m[l][j]).sum::<i128>();
                }
                next[i][i] += c[n - k + 1];
            }
            m = next;
            let tr: i128 = (0..n).map(|i| (0..n).map(|l| x[i][l] * m[l][i]).sum::<i128>()).sum();
            assert_eq!(tr % k as i128, 0);
            c[n - k] = -tr / k as i128;
        }
        c.reverse();
        c
    }

    #[test]
    fn integer_matrix_matches_exact_expansion() {
        let n = 14;
        let mut state: u64 = 0x2545_f491_4f6c_dd1d;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 5) as i128 - 1
        };
        let xi: Vec<Vec<i128>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
        let x = RMatrix::from_fn(n, n, |i, j| xi[i][j] as f64);
        let want = leverrier(&xi);
        let p = poly_det_pencil(&x).unwrap();
        assert_ne!(want[n], 0);
        assert_eq!(p.degree(), n);
        for k in 0..=n {
            let w = want[k] as f64;
            assert!(
                (p.coeff(k) - w).abs() <= 1e-9 * w.abs().max(1.0),
                "{k}: {} vs {w}",
                p.coeff(k)
            );
        }
    }

    #[test]
    fn roots_of_cubic() {
        let p = Polynomial::new(vec![-6.0, 11.0, -6.0, 1.0]);
        let mut r: Vec<f64> = p.roots().unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::linear(2.0);
        let b = Polynomial::new(vec![1.0, -1.0]);
        assert_eq!((&a * &b).coeffs(), &[1.0, 1.0, -2.0]);
        assert_eq!((&a + &b).coeffs(), &[2.0, 1.0]);
        assert_eq!((&a - &a).coeffs(), &[] as &[f64]);
        assert_eq!(a.powi(2).coeffs(), &[1.0, 4.0, 4.0]);
        assert_eq!(a.eval(0.5), 2.0);
        assert_eq!(a.eval_complex(Complex64::new(0.0, 1.0)), Complex64::new(1.0, 2.0));
    }
}
