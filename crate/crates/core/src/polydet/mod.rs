//! Factored forms of `det(I - u𝒜)` and the Ihara zeta cross-checks.

mod corollary;
mod ihara;
mod theorem5;

pub use corollary::{
    constant_rate_g, corollary_eval, corollary_eval_with, regular_diagonal, CorollaryKind, Transcription,
};
pub use ihara::{
    backtrackless_series_check, edge_matrix, ihara_zeta_recip, weinstein_aronszajn_check, IharaValues, SeriesCheck,
    MAX_SERIES_ORDER,
};
pub use theorem5::{
    theorem5_poly, theorem5_rhs, theorem5_rhs_with, CoreForm, DiagonalForm, Orientation, Theorem5Core, Theorem5Factors,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Factors with magnitude below this are treated as poles.
pub const POLE_THRESHOLD: f64 = 1e-8;

pub fn check_pole(value: Complex64, factor: impl FnOnce() -> String, u: Complex64) -> Result<Complex64> {
    let magnitude = value.norm();
    if magnitude < POLE_THRESHOLD {
        return Err(Error::Pole {
            factor: factor(),
            magnitude,
            u: u.to_string(),
        });
    }
    Ok(value)
}
