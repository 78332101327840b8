//! Bifurcation analysis for the one-dimensional Swift–Hohenberg equation
//!
//! `u_t = -(I + Δ)² u + λ u - u³` on `(0, π)` with period `π` and zero mean.
//!
//! The crate is organised as a pipeline:
//!
//! * [`spectral`]: trigonometric polynomials on the even-wavenumber basis
//!   `{sin 2kx, cos 2kx}`, in exact rational or `f64` arithmetic, together with
//!   the linear operator `L_λ`, the center/stable projections and the
//!   projection-induced transition isomorphism.
//! * [`reduction`]: exact center-manifold reduction at and near `λ = 9`.
//! * [`dynamics`]: analysis of the reduced planar vector field: integration,
//!   isolating-block classification, invariant circle, attractor–repeller pair.
//! * [`pde`]: Galerkin simulation of the full equation, stationary states,
//!   attractor sampling, the Lyapunov functional and parameter sweeps.

pub mod dynamics;
pub mod pde;
pub mod reduction;
pub mod scalar;
pub mod spectral;

pub use scalar::{parse_rational, rational_from_f64, Rational, Scalar, ScalarKind};
