//! Dense nonsymmetric eigenvalues.
//!
//! Real input: balancing, Householder reduction to upper Hessenberg form,
//! then the Francis implicit double-shift QR iteration (EISPACK `hqr`).
//! Complex input: Householder Hessenberg reduction and explicit single-shift
//! QR with Wilkinson shifts applied through Givens rotations.
//!
//! Only eigenvalues are computed; no transformations are accumulated.

use num_complex::Complex64;

use super::{CMatrix, RMatrix};
use crate::error::{Error, Result};

/// Iteration cap per eigenvalue (or 2x2 block) before giving up.
pub const MAX_SWEEPS_PER_EIGENVALUE: usize = 100;

const RADIX: f64 = 2.0;

/// Row-major square scratch matrix, 0-based.
struct Square {
    n: usize,
    data: Vec<f64>,
}

impl Square {
    fn from(x: &RMatrix) -> Self {
        let n = x.nrows();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = x[(i, j)];
            }
        }
        Self { n, data }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }
}

fn balance(a: &mut Square) {
    let n = a.n;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.at(j, i).abs();
                    r += a.at(i, j).abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        let v = a.at(i, j) * g;
                        a.set(i, j, v);
                    }
                    for j in 0..n {
                        let v = a.at(j, i) * f;
                        a.set(j, i, v);
                    }
                }
            }
        }
    }
}

fn hessenberg(a: &mut Square) {
    let n = a.n;
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![0.0; n];
    let mut f_cols = vec![0.0; n];
    for m in 1..high {
        let scale: f64 = (m..=high).map(|i| a.at(i, m - 1).abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        for i in (m..=high).rev() {
            ort[i] = a.at(i, m - 1) / scale;
            h += ort[i] * ort[i];
        }
        let mut g = h.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        h -= ort[m] * g;
        ort[m] -= g;

        // Left application: rows m..=high, columns m-1..n.
        f_cols[m - 1..n].iter_mut().for_each(|v| *v = 0.0);
        for i in m..=high {
            let oi = ort[i];
            let row = &a.data[i * n..(i + 1) * n];
            for j in m - 1..n {
                f_cols[j] += oi * row[j];
            }
        }
        for j in m - 1..n {
            f_cols[j] /= h;
        }
        for i in m..=high {
            let oi = ort[i];
            let row = &mut a.data[i * n..(i + 1) * n];
            for j in m - 1..n {
                row[j] -= f_cols[j] * oi;
            }
        }

        // Right application: all rows, columns m..=high.
        for i in 0..n {
            let row = &mut a.data[i * n..(i + 1) * n];
            let mut f = 0.0;
            for j in m..=high {
                f += ort[j] * row[j];
            }
            f /= h;
            for j in m..=high {
                row[j] -= f * ort[j];
            }
        }
        a.set(m, m - 1, scale * g);
        for i in m + 1..=high {
            a.set(i, m - 1, 0.0);
        }
    }
}

#[inline]
fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (EISPACK `hqr`).
fn hqr(a: &mut Square, name: &str) -> Result<Vec<Complex64>> {
    let n = a.n;
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    if n == 0 {
        return Ok(Vec::new());
    }
    // 1-based accessors keep the index arithmetic of the reference algorithm.
    macro_rules! at {
        ($i:expr, $j:expr) => {
            a.data[($i - 1) * n + ($j - 1)]
        };
    }
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += at!(i, j).abs();
        }
    }
    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r, mut s, mut w, mut x, mut y, mut z): (f64, f64, f64, f64, f64, f64, f64, f64);
    while nn >= 1 {
        let mut its = 0usize;
        loop {
            let mut l = nn;
            while l >= 2 {
                s = at!(l - 1, l - 1).abs() + at!(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at!(l, l - 1).abs() + s == s {
                    at!(l, l - 1) = 0.0;
                    break;
                }
                l -= 1;
            }
            x = at!(nn, nn);
            if l == nn {
                wr[nn - 1] = x + t;
                wi[nn - 1] = 0.0;
                nn -= 1;
                break;
            }
            y = at!(nn - 1, nn - 1);
            w = at!(nn, nn - 1) * at!(nn - 1, nn);
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 2] = x + z;
                    wr[nn - 1] = x + z;
                    if z != 0.0 {
                        wr[nn - 1] = x - w / z;
                    }
                    wi[nn - 2] = 0.0;
                    wi[nn - 1] = 0.0;
                } else {
                    wr[nn - 2] = x + p;
                    wr[nn - 1] = x + p;
                    wi[nn - 2] = -z;
                    wi[nn - 1] = z;
                }
                nn = nn.saturating_sub(2);
                break;
            }
            if its == MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NonConvergence {
                    name: name.to_string(),
                    dim: n,
                });
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift.
                t += x;
                for i in 1..=nn {
                    at!(i, i) -= x;
                }
                s = at!(nn, nn - 1).abs() + at!(nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            let mut m = nn - 2;
            loop {
                z = at!(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / at!(m + 1, m) + at!(m, m + 1);
                q = at!(m + 1, m + 1) - z - r - s;
                r = at!(m + 2, m + 1);
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = at!(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (at!(m - 1, m - 1).abs() + z.abs() + at!(m + 1, m + 1).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                at!(i, i - 2) = 0.0;
                if i != m + 2 {
                    at!(i, i - 3) = 0.0;
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = at!(k, k - 1);
                    q = at!(k + 1, k - 1);
                    r = 0.0;
                    if k != nn - 1 {
                        r = at!(k + 2, k - 1);
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            at!(k, k - 1) = -at!(k, k - 1);
                        }
                    } else {
                        at!(k, k - 1) = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        p = at!(k, j) + q * at!(k + 1, j);
                        if k != nn - 1 {
                            p += r * at!(k + 2, j);
                            at!(k + 2, j) -= p * z;
                        }
                        at!(k + 1, j) -= p * y;
                        at!(k, j) -= p * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        p = x * at!(i, k) + y * at!(i, k + 1);
                        if k != nn - 1 {
                            p += z * at!(i, k + 2);
                            at!(i, k + 2) -= p * r;
                        }
                        at!(i, k + 1) -= p * q;
                        at!(i, k) -= p;
                    }
                }
                k += 1;
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Ok(wr.into_iter().zip(wi).map(|(re, im)| Complex64::new(re, im)).collect())
}

/// All eigenvalues of a real square matrix.
///
/// Complex eigenvalues come out as exact conjugate pairs.
pub fn eigenvalues_real(x: &RMatrix, name: &str) -> Result<Vec<Complex64>> {
    if x.nrows() != x.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues of a {}x{} matrix",
            x.nrows(),
            x.ncols()
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("{name} has non-finite entries")));
    }
    let mut a = Square::from(x);
    balance(&mut a);
    hessenberg(&mut a);
    hqr(&mut a, name)
}

/// All eigenvalues of a complex square matrix.
pub fn eigenvalues_complex(x: &CMatrix, name: &str) -> Result<Vec<Complex64>> {
    let n = x.nrows();
    if n != x.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues of a {}x{} matrix",
            x.nrows(),
            x.ncols()
        )));
    }
    if x.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::InvalidInput(format!("{name} has non-finite entries")));
    }
    let mut h: Vec<Complex64> = (0..n * n).map(|k| x[(k / n, k % n)]).collect();
    complex_hessenberg(&mut h, n);
    complex_qr(&mut h, n, name)
}

fn complex_hessenberg(h: &mut [Complex64], n: usize) {
    if n < 3 {
        return;
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut f_cols = vec![zero; n];
    for m in 1..n - 1 {
        let norm: f64 = (m..n).map(|i| h[i * n + m - 1].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[m * n + m - 1];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        for i in m..n {
            v[i] = h[i * n + m - 1];
        }
        v[m] -= alpha;
        let vnorm2: f64 = (m..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let scale = 2.0 / vnorm2;
        // Left: H <- (I - 2 v v^H / |v|^2) H
        for j in m - 1..n {
            f_cols[j] = zero;
        }
        for i in m..n {
            let vc = v[i].conj();
            for j in m - 1..n {
                f_cols[j] += vc * h[i * n + j];
            }
        }
        for i in m..n {
            let vi = v[i] * scale;
            for j in m - 1..n {
                h[i * n + j] -= vi * f_cols[j];
            }
        }
        // Right: H <- H (I - 2 v v^H / |v|^2)
        for i in 0..n {
            let mut f = zero;
            for j in m..n {
                f += h[i * n + j] * v[j];
            }
            f *= scale;
            for j in m..n {
                h[i * n + j] -= f * v[j].conj();
            }
        }
        for i in m + 1..n {
            h[i * n + m - 1] = zero;
        }
    }
}

fn complex_qr(h: &mut [Complex64], n: usize, name: &str) -> Result<Vec<Complex64>> {
    let mut eig = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eig);
    }
    let l1 = |z: Complex64| z.re.abs() + z.im.abs();
    let anorm: f64 = h.iter().map(|z| l1(*z)).sum::<f64>().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut its = 0usize;
    let mut rot: Vec<(Complex64, Complex64)> = vec![(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)); n];
    loop {
        if hi == 0 {
            eig.push(h[0]);
            break;
        }
        let mut l = hi;
        while l > 0 {
            let mut s = l1(h[(l - 1) * n + l - 1]) + l1(h[l * n + l]);
            if s == 0.0 {
                s = anorm;
            }
            if l1(h[l * n + l - 1]) <= f64::EPSILON * s {
                h[l * n + l - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig.push(h[hi * n + hi]);
            hi -= 1;
            its = 0;
            continue;
        }
        if its == MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::NonConvergence {
                name: name.to_string(),
                dim: n,
            });
        }
        its += 1;
        let a = h[(hi - 1) * n + hi - 1];
        let b = h[(hi - 1) * n + hi];
        let c = h[hi * n + hi - 1];
        let d = h[hi * n + hi];
        let mu = if its % 10 == 0 {
            d + Complex64::new(0.75 * c.norm(), 0.0)
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        for k in l..=hi {
            h[k * n + k] -= mu;
        }
        for k in l..hi {
            let x = h[k * n + k];
            let y = h[(k + 1) * n + k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            rot[k] = (cs, sn);
            for j in k..=hi {
                let h1 = h[k * n + j];
                let h2 = h[(k + 1) * n + j];
                h[k * n + j] = cs.conj() * h1 + sn.conj() * h2;
                h[(k + 1) * n + j] = -sn * h1 + cs * h2;
            }
        }
        for k in l..hi {
            let (cs, sn) = rot[k];
            let top = (k + 2).min(hi);
            for i in l..=top {
                let h1 = h[i * n + k];
                let h2 = h[i * n + k + 1];
                h[i * n + k] = h1 * cs + h2 * sn;
                h[i * n + k + 1] = -h1 * sn.conj() + h2 * cs.conj();
            }
        }
        for k in l..=hi {
            h[k * n + k] += mu;
        }
    }
    Ok(eig)
}
