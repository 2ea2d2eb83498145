//! Dense matrix helpers shared by every module.
//!
//! Matrices are `nalgebra` dense matrices. Determinants go through a partial
//! pivoting LU; [`log_det`] additionally returns the sum of principal
//! logarithms of the pivots, which is what the zeta functions need.

mod eigen;

pub use eigen::{eigenvalues_complex, eigenvalues_real, MAX_SWEEPS_PER_EIGENVALUE};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type RMatrix = DMatrix<f64>;
pub type CMatrix = DMatrix<Complex64>;
pub type IMatrix = DMatrix<i64>;

pub fn to_complex(x: &RMatrix) -> CMatrix {
    x.map(|v| Complex64::new(v, 0.0))
}

pub fn to_real(x: &IMatrix) -> RMatrix {
    x.map(|v| v as f64)
}

/// `I - u X` for a square `X`.
pub fn pencil(x: &CMatrix, u: Complex64) -> CMatrix {
    let n = x.nrows();
    let mut out = x.map(|v| -u * v);
    for i in 0..n {
        out[(i, i)] += Complex64::new(1.0, 0.0);
    }
    out
}

pub fn pencil_real(x: &RMatrix, u: f64) -> RMatrix {
    let n = x.nrows();
    let mut out = x * (-u);
    for i in 0..n {
        out[(i, i)] += 1.0;
    }
    out
}

pub fn det_real(x: &RMatrix) -> f64 {
    if x.nrows() == 0 {
        return 1.0;
    }
    x.clone().lu().determinant()
}

pub fn det_complex(x: &CMatrix) -> Complex64 {
    if x.nrows() == 0 {
        return Complex64::new(1.0, 0.0);
    }
    x.clone().lu().determinant()
}

/// Largest absolute row sum, the induced infinity norm.
pub fn max_row_sum<T>(x: &DMatrix<T>) -> f64
where
    T: nalgebra::Scalar + Copy,
    T: Into<Complex64>,
{
    (0..x.nrows())
        .map(|i| (0..x.ncols()).map(|j| x[(i, j)].into().norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Determinant and the sum of principal logarithms of the LU pivots.
///
/// `log` is a logarithm of `det` (`exp(log) == det`), but its imaginary part
/// depends on the pivots, not on a global branch choice. Returns `None` when
/// a pivot is exactly zero.
pub fn log_det(x: &CMatrix) -> Option<(Complex64, Complex64)> {
    let n = x.nrows();
    assert_eq!(n, x.ncols(), "log_det needs a square matrix");
    let mut a = x.clone();
    let mut log = Complex64::new(0.0, 0.0);
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let mut p = k;
        let mut best = a[(k, k)].norm();
        for i in k + 1..n {
            let v = a[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return None;
        }
        if p != k {
            a.swap_rows(p, k);
            det = -det;
            log += Complex64::new(0.0, std::f64::consts::PI);
        }
        let pivot = a[(k, k)];
        det *= pivot;
        log += pivot.ln();
        for i in k + 1..n {
            let f = a[(i, k)] / pivot;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let t = a[(k, j)];
                a[(i, j)] -= f * t;
            }
        }
    }
    Some((det, log))
}

/// Determinant with the natural logarithm of a first-order estimate of its
/// absolute rounding error.
///
/// Each LU pivot is known to about `eps * g`, `g` the largest entry seen
/// during elimination, so the error is about `eps * g * sum_i prod_{j != i}
/// |U_jj|`. Pivots are floored at `eps * g` for the same reason.
pub fn det_with_error(x: &CMatrix) -> (Complex64, f64) {
    let n = x.nrows();
    assert_eq!(n, x.ncols(), "det_with_error needs a square matrix");
    if n == 0 {
        return (Complex64::new(1.0, 0.0), f64::NEG_INFINITY);
    }
    let mut a = x.clone();
    let mut det = Complex64::new(1.0, 0.0);
    let mut growth = a.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let mut p = k;
        let mut best = a[(k, k)].norm();
        for i in k + 1..n {
            let v = a[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        pivots.push(best);
        if best == 0.0 {
            det = Complex64::new(0.0, 0.0);
            continue;
        }
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let pivot = a[(k, k)];
        det *= pivot;
        for i in k + 1..n {
            a[(i, k)] /= pivot;
        }
        for j in k + 1..n {
            let t = a[(k, j)];
            if t == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in k + 1..n {
                let f = a[(i, k)];
                a[(i, j)] -= f * t;
                growth = growth.max(a[(i, j)].l1_norm());
            }
        }
    }
    let floor = (f64::EPSILON * growth).max(f64::MIN_POSITIVE);
    let logs: Vec<f64> = pivots.iter().map(|p| p.max(floor).ln()).collect();
    let total: f64 = logs.iter().sum();
    let terms: Vec<f64> = logs.iter().map(|l| total - l).collect();
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
    (det, floor.ln() + (n as f64).ln() + lse)
}

pub fn identity(n: usize) -> RMatrix {
    RMatrix::identity(n, n)
}

pub fn diag(values: &[f64]) -> RMatrix {
    RMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))
}
