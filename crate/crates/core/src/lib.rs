//! Digraph matrices for SIS epidemics on networks.
//!
//! The crate assembles the non-backtracking matrix `H` and the SIS Metzler
//! matrix `𝒜` of a digraph, checks the factored determinant formula for
//! `det(I - u𝒜)` and its constant-rate specializations against direct
//! determinants, computes spectra and the epidemic decay-rate bound
//! `γ ≥ -λ_max(𝒜)`, and evaluates walk-type zeta functions on finite tori
//! together with their `N → ∞` limits.
//!
//! Module map:
//!
//! * [`graph`]: digraph model, canonical arc ordering, matrix assembly.
//! * [`poly`] and [`polydet`]: polynomial determinants, the factored
//!   determinant formula, constant-rate corollaries, Ihara zeta checks.
//! * [`spectra`]: dense eigenvalues, closed-form spectrum for regular graphs,
//!   the decay bound.
//! * [`zeta`]: coin-walk and Metzler zeta functions on tori.
//! * [`sis`]: Gillespie simulation, exact master-equation decay rate,
//!   empirical decay estimates.
//! * [`ledger`]: printed-versus-rederived coefficient discrepancies.

pub mod error;
pub mod graph;
pub mod ledger;
pub mod linalg;
pub mod poly;
pub mod polydet;
pub mod sis;
pub mod spectra;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{arc_partition, assemble, Arc, ArcOrdering, Digraph, MetzlerAssembly};
pub use linalg::{CMatrix, RMatrix};
pub use num_complex::Complex64;
pub use poly::{poly_det_pencil, Polynomial};
pub use spectra::{DecayBound, SpectrumResult, SpectrumSource};
pub use zeta::{ZetaMethod, ZetaValue};
