//! The reduced planar flow `ṡ = G(s)`: time stepping, disk-block
//! classification, the invariant circle and the attractor–repeller check.

mod block;
mod circle;
mod integrate;

pub use block::{
    classify_block, classify_block_with, BlockClassification, BlockOptions, BoundaryLabel,
    ClassifyRow, Verdict,
};
pub use circle::{
    certify_origin_isolation, check_attractor_repeller, invariant_circle, ring_probes,
    AttractorRepellerReport, InvariantCircle, IsolationCertificate, PairCheckOptions, ProbeOutcome,
    CIRCLE_SEARCH_RADIUS,
};
pub use integrate::{integrate_reduced, ReducedTrajectory, ESCAPE_NORM};

use serde::{Deserialize, Serialize};

use crate::reduction::ReductionError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("invalid step: dt = {dt}, horizon = {horizon}")]
    InvalidStep { dt: f64, horizon: f64 },
    #[error("non-finite state ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("sign certificate fails on (0, {radius}]: upper bound {bound} is not negative")]
    Uncertified { radius: String, bound: String },
}

/// A point `(s₁, s₂)` of the center plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarState {
    pub s1: f64,
    pub s2: f64,
}

impl PlanarState {
    pub fn new(s1: f64, s2: f64) -> Result<Self, DynamicsError> {
        if !(s1.is_finite() && s2.is_finite()) {
            return Err(DynamicsError::NonFinite(s1, s2));
        }
        Ok(PlanarState { s1, s2 })
    }

    pub const ORIGIN: PlanarState = PlanarState { s1: 0.0, s2: 0.0 };

    pub fn polar(r: f64, theta: f64) -> Self {
        PlanarState {
            s1: r * theta.cos(),
            s2: r * theta.sin(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.s1.hypot(self.s2)
    }
}
