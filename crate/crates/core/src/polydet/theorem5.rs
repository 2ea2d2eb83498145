//! `det(I - u𝒜)` as a product of scalar factors and an `N x N` determinant.
//!
//! With `γ_e = β_e + δ_o(e) + δ_t(e)` and `ε_e = δ_o(e) + δ_t(e)`,
//!
//! ```text
//! det(I - u𝒜) = ∏_singles (1 + γ_e u) ∏_pairs G_k(u)
//!               · det(I + u Dv - u (A_nsymᵀ + A_sym) + u² D̃)
//! G_k = (1 + γ_f u)(1 + γ_f⁻¹ u) - β_f β_f⁻¹ u²
//! ```
//!
//! where, for `e = (a, b)`:
//!
//! * `A_nsym[a][b] = β_e (1 + ε_e u) / (1 + γ_e u)` for arcs without inverse,
//! * `A_sym[a][b] = β_e⁻¹ (1 + γ_e u)(1 + ε_e u) / G_e` for paired arcs,
//! * `D̃[a][a] = Σ_{o(e) = a, paired} β_e β_e⁻¹ (1 + ε_e u) / G_e`.
//!
//! The alternative placements of the transpose and the extra `-u` on `D̃`
//! are available through [`CoreForm`] so they can be compared. The two
//! orientations give transposed core matrices and hence equal determinants.

use num_complex::Complex64;

use super::check_pole;
use crate::error::Result;
use crate::graph::MetzlerAssembly;
use crate::linalg::{det_with_error, max_row_sum, CMatrix};
use crate::poly::{interpolate_on_circles, Polynomial, Sample};

/// Scalar factors, indexed by canonical arc position.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem5Factors {
    pub gamma: Vec<f64>,
    pub epsilon: Vec<f64>,
    /// `G_k`, one per pair `(f_k, f_k⁻¹)`.
    pub g: Vec<Polynomial>,
}

impl Theorem5Factors {
    pub fn new(asm: &MetzlerAssembly) -> Self {
        let epsilon: Vec<f64> = asm
            .arcs
            .iter()
            .map(|a| asm.delta[a.origin] + asm.delta[a.terminus])
            .collect();
        let gamma: Vec<f64> = epsilon.iter().zip(&asm.beta).map(|(e, b)| e + b).collect();
        let g = (0..asm.m1)
            .map(|k| {
                let f = asm.m0 + k;
                let fi = f + asm.m1;
                Polynomial::new(vec![
                    1.0,
                    gamma[f] + gamma[fi],
                    gamma[f] * gamma[fi] - asm.beta[f] * asm.beta[fi],
                ])
            })
            .collect();
        Self { gamma, epsilon, g }
    }

    /// `∏ (1 + γ_e u) ∏ G_k(u)`, refusing near a zero of any factor.
    pub fn prefactor(&self, m0: usize, u: Complex64) -> Result<Complex64> {
        let mut p = Complex64::new(1.0, 0.0);
        for (e, &g) in self.gamma[..m0].iter().enumerate() {
            p *= check_pole(1.0 + g * u, || format!("1 + γ u (arc {e})"), u)?;
        }
        for (k, gk) in self.g.iter().enumerate() {
            p *= check_pole(gk.eval_complex(u), || format!("G_{k}"), u)?;
        }
        Ok(p)
    }
}

/// Which side of the adjacency terms carries the transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `A_nsymᵀ + A_sym`.
    TransposeUnpaired,
    /// `A_nsym + A_symᵀ`.
    TransposePaired,
}

/// Whether `D̃` carries an extra factor `-u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalForm {
    Plain,
    NegatedU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoreForm {
    pub orientation: Orientation,
    pub diagonal: DiagonalForm,
}

impl Default for CoreForm {
    fn default() -> Self {
        Self {
            orientation: Orientation::TransposeUnpaired,
            diagonal: DiagonalForm::Plain,
        }
    }
}

/// The `u`-dependent `N x N` matrices at one value of `u`.
#[derive(Debug, Clone)]
pub struct Theorem5Core {
    pub u: Complex64,
    pub a_nsym: CMatrix,
    pub a_sym: CMatrix,
    pub d_tilde: CMatrix,
}

impl Theorem5Core {
    pub fn at(asm: &MetzlerAssembly, f: &Theorem5Factors, u: Complex64, form: CoreForm) -> Result<Self> {
        let n = asm.n;
        let zero = Complex64::new(0.0, 0.0);
        let mut a_nsym = CMatrix::from_element(n, n, zero);
        let mut a_sym = CMatrix::from_element(n, n, zero);
        let mut d_tilde = CMatrix::from_element(n, n, zero);
        for e in 0..asm.m0 {
            let a = asm.arcs[e];
            let den = check_pole(1.0 + f.gamma[e] * u, || format!("1 + γ u (arc {e})"), u)?;
            a_nsym[(a.origin, a.terminus)] = asm.beta[e] * (1.0 + f.epsilon[e] * u) / den;
        }
        for k in 0..asm.m1 {
            let gk = check_pole(f.g[k].eval_complex(u), || format!("G_{k}"), u)?;
            let pf = asm.m0 + k;
            for (e, ei) in [(pf, pf + asm.m1), (pf + asm.m1, pf)] {
                let a = asm.arcs[e];
                let eps = 1.0 + f.epsilon[e] * u;
                a_sym[(a.origin, a.terminus)] = asm.beta[ei] * (1.0 + f.gamma[e] * u) * eps / gk;
                let mut diag = asm.beta[e] * asm.beta[ei] * eps / gk;
                if form.diagonal == DiagonalForm::NegatedU {
                    diag *= -u;
                }
                d_tilde[(a.origin, a.origin)] += diag;
            }
        }
        Ok(Self {
            u,
            a_nsym,
            a_sym,
            d_tilde,
        })
    }

    /// `M(u)` of the Schur complement, in the given orientation.
    pub fn m(&self, orientation: Orientation) -> CMatrix {
        let adj = match orientation {
            Orientation::TransposeUnpaired => self.a_nsym.transpose() + &self.a_sym,
            Orientation::TransposePaired => &self.a_nsym + self.a_sym.transpose(),
        };
        adj - self.d_tilde.map(|v| v * self.u)
    }

    /// `I + u Dv - u M(u)`.
    pub fn core_matrix(&self, asm: &MetzlerAssembly, orientation: Orientation) -> CMatrix {
        let u = self.u;
        let mut x = self.m(orientation).map(|v| -u * v);
        for i in 0..asm.n {
            x[(i, i)] += 1.0 + u * asm.delta[i];
        }
        x
    }
}

/// Right-hand side with its estimated absolute rounding error.
pub fn theorem5_rhs_with(asm: &MetzlerAssembly, u: Complex64, form: CoreForm) -> Result<Sample> {
    let f = Theorem5Factors::new(asm);
    let pre = f.prefactor(asm.m0, u)?;
    let core = Theorem5Core::at(asm, &f, u, form)?;
    let (det, log_err) = det_with_error(&core.core_matrix(asm, form.orientation));
    let value = pre * det;
    let rel = (asm.m + 1) as f64 * f64::EPSILON;
    let log_err = (pre.norm().ln() + log_err).max((rel * value.norm()).max(f64::MIN_POSITIVE).ln());
    Ok(Sample { value, log_err })
}

/// `∏(1 + γ_e u) ∏ G_k(u) det(I + u Dv - u M(u))`.
pub fn theorem5_rhs(asm: &MetzlerAssembly, u: Complex64) -> Result<Complex64> {
    theorem5_rhs_with(asm, u, CoreForm::default()).map(|s| s.value)
}

/// `det(I - u𝒜)` rebuilt by interpolating [`theorem5_rhs`].
pub fn theorem5_poly(asm: &MetzlerAssembly) -> Result<Polynomial> {
    let r0 = 1.0 / (1.0 + max_row_sum(&asm.a_cal));
    interpolate_on_circles(asm.dim(), r0, |u| theorem5_rhs_with(asm, u, CoreForm::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{single_arc, symmetrize, Arc, Digraph};
    use crate::linalg::{det_complex, pencil, to_complex};
    use crate::poly::poly_det_pencil;

    fn direct(asm: &MetzlerAssembly, u: Complex64) -> Complex64 {
        det_complex(&pencil(&to_complex(&asm.a_cal), u))
    }

    fn mixed() -> Digraph {
        let arcs = [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (0, 3)]
            .iter()
            .map(|&p| Arc::from(p))
            .collect();
        Digraph::new(4, arcs, vec![0.3, 1.7, 0.9, 0.4, 1.3, 0.6], vec![0.5, 1.1, 0.2, 0.8]).unwrap()
    }

    #[test]
    fn factors_single_arc() {
        let asm = MetzlerAssembly::from_digraph(&single_arc(1.0, 1.0).unwrap()).unwrap();
        let f = Theorem5Factors::new(&asm);
        assert_eq!(f.gamma, vec![3.0]);
        assert_eq!(f.epsilon, vec![2.0]);
        assert!(f.g.is_empty());
    }

    #[test]
    fn g_is_quadratic_in_gamma() {
        let asm = MetzlerAssembly::from_digraph(&mixed()).unwrap();
        let f = Theorem5Factors::new(&asm);
        assert_eq!(f.g.len(), 1);
        let (gf, gi) = (f.gamma[asm.m0], f.gamma[asm.m0 + 1]);
        let (bf, bi) = (asm.beta[asm.m0], asm.beta[asm.m0 + 1]);
        assert_eq!(f.g[0].coeffs(), &[1.0, gf + gi, gf * gi - bf * bi]);
        for (g, (e, b)) in f.gamma.iter().zip(f.epsilon.iter().zip(&asm.beta)) {
            assert_eq!(*g, e + b);
        }
    }

    #[test]
    fn rhs_is_one_at_zero() {
        let asm = MetzlerAssembly::from_digraph(&mixed()).unwrap();
        let v = theorem5_rhs(&asm, Complex64::new(0.0, 0.0)).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }

    #[test]
    fn rhs_matches_direct_on_mixed_digraph() {
        let asm = MetzlerAssembly::from_digraph(&mixed()).unwrap();
        for u in [
            Complex64::new(0.1, 0.0),
            Complex64::new(-0.05, 0.2),
            Complex64::new(0.3, -0.1),
        ] {
            let a = theorem5_rhs(&asm, u).unwrap();
            let b = direct(&asm, u);
            assert!((a - b).norm() <= 1e-12 * b.norm(), "{u}: {a} vs {b}");
        }
    }

    #[test]
    fn orientation_is_immaterial_but_diagonal_sign_is_not() {
        let asm = MetzlerAssembly::from_digraph(&mixed()).unwrap();
        let u = Complex64::new(0.2, 0.0);
        let b = direct(&asm, u);
        let paired = CoreForm {
            orientation: Orientation::TransposePaired,
            diagonal: DiagonalForm::Plain,
        };
        let a = theorem5_rhs_with(&asm, u, paired).unwrap().value;
        assert!((a - b).norm() <= 1e-12 * b.norm());
        let negated = CoreForm {
            orientation: Orientation::TransposeUnpaired,
            diagonal: DiagonalForm::NegatedU,
        };
        let a = theorem5_rhs_with(&asm, u, negated).unwrap().value;
        assert!((a - b).norm() > 1e-6 * b.norm());
    }

    #[test]
    fn pole_is_refused() {
        let asm = MetzlerAssembly::from_digraph(&single_arc(1.0, 1.0).unwrap()).unwrap();
        let err = theorem5_rhs(&asm, Complex64::new(-1.0 / 3.0, 0.0)).unwrap_err();
        assert!(matches!(err, crate::Error::Pole { .. }), "{err}");
    }

    #[test]
    fn tiny_beta_decouples() {
        let g = mixed();
        let g = Digraph::new(4, g.arcs().to_vec(), vec![1e-12; 6], g.delta().to_vec()).unwrap();
        let asm = MetzlerAssembly::from_digraph(&g).unwrap();
        let f = Theorem5Factors::new(&asm);
        let u = Complex64::new(0.15, 0.05);
        let mut want = Complex64::new(1.0, 0.0);
        for d in g.delta() {
            want *= 1.0 + u * d;
        }
        for e in &f.epsilon {
            want *= 1.0 + u * e;
        }
        let got = theorem5_rhs(&asm, u).unwrap();
        assert!((got - want).norm() < 1e-9 * want.norm());
    }

    #[test]
    fn poly_single_arc() {
        let asm = MetzlerAssembly::from_digraph(&single_arc(1.0, 1.0).unwrap()).unwrap();
        let p = theorem5_poly(&asm).unwrap();
        // (1 + u)^2 (1 + 3u)
        let want = [1.0, 5.0, 7.0, 3.0];
        assert_eq!(p.degree(), 3);
        for (k, w) in want.iter().enumerate() {
            assert!((p.coeff(k) - w).abs() < 1e-12, "{k}: {}", p.coeff(k));
        }
    }

    #[test]
    fn poly_symmetric_edge_matches_oracle() {
        let asm = MetzlerAssembly::from_digraph(&symmetrize(2, &[(0, 1)], 1.0, 1.0).unwrap()).unwrap();
        let p = theorem5_poly(&asm).unwrap();
        let q = poly_det_pencil(&asm.a_cal).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(q.degree(), 4);
        for k in 0..=4 {
            assert!((p.coeff(k) - q.coeff(k)).abs() < 1e-12 * q.coeff(k).abs().max(1.0));
        }
    }
}
