//! Walk-type zeta functions on the torus `T^d_N`.
//!
//! Both zetas are normalized per vertex, `ζ̄(X, T^d_N, u)⁻¹ = det(I - uX)^(1/N^d)`.
//! Values reported here are reciprocal zetas together with their logarithm.

mod coins;
mod metzler;
mod walk;

pub use coins::{grover_coin, identity_coin, identity_coin_zeta, random_stochastic_coin, random_unitary_coin};
pub use metzler::{
    limit_convergence_table, metzler_zeta_finite, metzler_zeta_finite_with, metzler_zeta_limit, ConvergenceRow,
    ConvergenceTable, PrefactorExponent, TorusZetaForm, MAX_DIRECT_DIM,
};
pub use walk::{fourier_symbol, walk_operator, walk_zeta, CoinWalk};

use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaMethod {
    DirectDet,
    FourierProduct,
    QuadratureLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaParams {
    pub d: usize,
    /// Torus side, or quadrature resolution for the limit.
    pub side: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub u: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaValue {
    /// Reciprocal zeta `exp(log_value)`.
    pub value: Complex64,
    /// `(1/N^d) log det(I - uX)`, or its quadrature approximation.
    pub log_value: Complex64,
    /// `det(I - uX)` for finite tori.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<Complex64>,
    /// `|log value(Q) - log value(Q/2)|` for quadrature values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<f64>,
    pub method: ZetaMethod,
    pub params: ZetaParams,
}

impl ZetaValue {
    fn from_log(log_value: Complex64, method: ZetaMethod, params: ZetaParams) -> Self {
        Self {
            value: log_value.exp(),
            log_value,
            determinant: None,
            convergence: None,
            method,
            params,
        }
    }
}
