//! Trigonometric and spectral algebra on the zero-mean, `π`-periodic space.
//!
//! Functions are expanded in `{sin 2kx, cos 2kx : k ≥ 1}`, which diagonalises
//! `L_λ = (I + Δ)² − λ`. A constant slot is kept so that products can be
//! formed before projecting back to the zero-mean space.

mod json;
mod operator;
mod transition;
mod trig;

pub use json::{TermRecord, TrigPolyRecord};
pub use operator::{
    apply_l, basis_index, basis_mode, const_mode_drops, eigenvalue, from_coefficient_vector,
    project_center, project_stable, to_coefficient_vector, SpectralDecomposition, CENTER_K,
};
pub use transition::{transition_isomorphism, LinearMapMatrix, ProjectionPair};
pub use trig::{multiply_trig, Mode, TrigPoly, Wave};

use crate::scalar::ScalarKind;

/// Truncation used for exact reduction work.
pub const REDUCTION_TRUNCATION: u32 = 8;
/// Truncation used for simulation.
pub const SIMULATION_TRUNCATION: u32 = 32;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("truncation overflow: wavenumber index {needed} exceeds truncation {available}")]
    TruncationOverflow { needed: u32, available: u32 },
    #[error("scalar kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: ScalarKind,
        found: ScalarKind,
    },
    #[error("format error: {0}")]
    Format(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} projection is not idempotent")]
    NotIdempotent(String),
    #[error("projections do not sum to the identity")]
    NotComplementary,
    #[error("projection perturbation has operator norm {norm:.6} (must be < 1)")]
    NormCondition { norm: f64 },
    #[error("gap condition fails at k = {k}: eigenvalue {eigenvalue} is neither within beta = {beta} of 0 nor >= 2 beta")]
    GapCondition { k: u32, eigenvalue: f64, beta: f64 },
}
