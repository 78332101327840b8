//! Galerkin simulation of `u_t = −(I + Δ)²u + λu − u³` on the zero-mean
//! `π`-periodic space, truncated at `k ≤ K`.

mod attractor;
mod cubic;
mod state;
mod stationary;
mod stepper;
mod sweep;

pub use attractor::{
    random_initial_states, run_to_rest, sample_attractor, AttractorSample, RunOutcome, SampledState,
};
pub use cubic::CubicEvaluator;
pub use state::{lyapunov_value, ModeState};
pub use stationary::{stationary_amplitude, StationaryState};
pub use stepper::{
    integrate_pde, integrate_state, pde_rhs, Etdrk4, PdeTrajectory, SimConfig, ESCAPE_NORM,
};
pub use sweep::{bifurcation_sweep, sweep_csv, SweepConfig, SweepRow, SWEEP_CSV_HEADER};

use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PdeError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("Newton iteration did not converge in {iterations} steps (residual {residual:e})")]
    NewtonFailed { iterations: usize, residual: f64 },
    #[error("singular Jacobian in Newton iteration")]
    SingularJacobian,
}
