use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::stepper::mode_eigenvalue;
use super::PdeError;

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;

/// Steady state `u = Σ a_k sin 2kx` on the odd slice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryState {
    pub lambda: f64,
    /// `|a₁|`.
    pub amplitude: f64,
    /// `a₁, …, a_K`.
    pub sine_coefficients: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Newton solve of `−λ_k a_k − [u³]_k = 0`, `k = 1..K`, started from
/// `a₁ = 2√((λ − 9)/3)`. Returns the zero state for `λ ≤ 9`.
pub fn stationary_amplitude(lambda: f64, truncation: u32) -> Result<StationaryState, PdeError> {
    if truncation == 0 || !lambda.is_finite() {
        return Err(PdeError::Config(format!(
            "truncation {truncation}, lambda {lambda}"
        )));
    }
    let k = truncation as usize;
    if lambda <= 9.0 {
        return Ok(StationaryState {
            lambda,
            amplitude: 0.0,
            sine_coefficients: vec![0.0; k],
            residual: 0.0,
            iterations: 0,
        });
    }
    // trapezoid rule on 4K + 4 points integrates the degree-4K products exactly
    let m = 4 * k + 4;
    let xs: Vec<f64> = (0..m).map(|j| PI * j as f64 / m as f64).collect();
    let basis: Vec<Vec<f64>> = (1..=k)
        .map(|kk| xs.iter().map(|x| (2.0 * kk as f64 * x).sin()).collect())
        .collect();
    let eig: Vec<f64> = (1..=k as u32)
        .map(|kk| mode_eigenvalue(kk, lambda))
        .collect();
    let weight = 2.0 / m as f64;

    let mut a = DVector::zeros(k);
    a[0] = 2.0 * ((lambda - 9.0) / 3.0).sqrt();
    let mut residual = f64::INFINITY;
    for iter in 0..=NEWTON_MAX_ITER {
        let u: Vec<f64> = (0..m)
            .map(|j| (0..k).map(|i| a[i] * basis[i][j]).sum())
            .collect();
        let f = DVector::from_fn(k, |i, _| {
            let proj: f64 = (0..m).map(|j| u[j].powi(3) * basis[i][j]).sum::<f64>() * weight;
            -eig[i] * a[i] - proj
        });
        residual = f.norm();
        if residual < NEWTON_TOL {
            return Ok(StationaryState {
                lambda,
                amplitude: a[0].abs(),
                sine_coefficients: a.iter().copied().collect(),
                residual,
                iterations: iter,
            });
        }
        if iter == NEWTON_MAX_ITER {
            break;
        }
        let jac = DMatrix::from_fn(k, k, |i, l| {
            let proj: f64 = (0..m)
                .map(|j| 3.0 * u[j] * u[j] * basis[l][j] * basis[i][j])
                .sum::<f64>()
                * weight;
            let diag = if i == l { -eig[i] } else { 0.0 };
            diag - proj
        });
        let delta = jac.lu().solve(&(-f)).ok_or(PdeError::SingularJacobian)?;
        a += delta;
    }
    Err(PdeError::NewtonFailed {
        iterations: NEWTON_MAX_ITER,
        residual,
    })
}
