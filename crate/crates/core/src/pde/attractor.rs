use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::stepper::{Etdrk4, ESCAPE_NORM};
use super::{ModeState, PdeError, SimConfig};

/// Seeded initial states: Gaussian coefficients damped like `1/k`, rescaled
/// to a norm drawn uniformly from `[radius/4, radius]`.
pub fn random_initial_states(
    truncation: u32,
    count: usize,
    radius: f64,
    seed: u64,
) -> Vec<ModeState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut coeffs: Vec<f64> = (0..2 * truncation as usize)
                .map(|i| rng.sample::<f64, _>(StandardNormal) / (i / 2 + 1) as f64)
                .collect();
            let target = radius * rng.random_range(0.25..=1.0);
            let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
            coeffs.iter_mut().for_each(|c| *c *= target / norm);
            ModeState::from_coefficients(coeffs).expect("finite coefficients")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunOutcome {
    Converged {
        state: ModeState,
        residual: f64,
        time: f64,
    },
    Escaped {
        time: f64,
    },
    Unconverged {
        state: ModeState,
        residual: f64,
    },
}

/// Integrates until `‖u(t+1) − u(t)‖ < tol` and `‖u_t‖ < tol`, checking
/// once per unit of time.
pub fn run_to_rest(cfg: &SimConfig, u0: ModeState) -> Result<RunOutcome, PdeError> {
    cfg.validate()?;
    let mut stepper = Etdrk4::new(cfg.lambda, cfg.truncation, cfg.dt);
    let per_unit = (1.0 / cfg.dt).round().max(1.0) as usize;
    let steps = cfg.steps();
    let mut u = u0;
    let mut checkpoint = u.clone();
    for n in 1..=steps {
        stepper.step(u.coefficients_mut());
        if u.norm().is_nan() || u.norm() > ESCAPE_NORM {
            return Ok(RunOutcome::Escaped {
                time: n as f64 * cfg.dt,
            });
        }
        if n % per_unit == 0 {
            if u.distance(&checkpoint) < cfg.tol {
                let residual = stepper.rhs(&u).norm();
                if residual < cfg.tol {
                    return Ok(RunOutcome::Converged {
                        state: u,
                        residual,
                        time: n as f64 * cfg.dt,
                    });
                }
            }
            checkpoint = u.clone();
        }
    }
    let residual = stepper.rhs(&u).norm();
    Ok(RunOutcome::Unconverged { state: u, residual })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledState {
    /// Index of the first initial state that reached this state.
    pub ic_index: usize,
    pub coefficients: Vec<f64>,
    pub norm: f64,
    pub amplitude: f64,
    pub residual: f64,
}

/// Converged end states standing in for the attractor `K_λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractorSample {
    pub lambda: f64,
    pub states: Vec<SampledState>,
    /// `max ‖u‖` over the sample, i.e. the Hausdorff semi-distance to `{0}`.
    pub dist_h: f64,
    pub converged: usize,
    pub escaped: usize,
    pub unconverged: usize,
}

pub fn sample_attractor(cfg: &SimConfig) -> Result<AttractorSample, PdeError> {
    cfg.validate()?;
    if cfg.ic_count < 8 {
        return Err(PdeError::Config(format!(
            "ic_count {} below 8",
            cfg.ic_count
        )));
    }
    let initial = random_initial_states(cfg.truncation, cfg.ic_count, cfg.ic_radius, cfg.ic_seed);
    let outcomes: Vec<RunOutcome> = initial
        .into_par_iter()
        .map(|u0| run_to_rest(cfg, u0))
        .collect::<Result<_, _>>()?;

    let (mut converged, mut escaped, mut unconverged) = (0, 0, 0);
    let mut states: Vec<SampledState> = Vec::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            RunOutcome::Converged {
                state, residual, ..
            } => {
                converged += 1;
                let duplicate = states.iter().any(|s| {
                    s.coefficients
                        .iter()
                        .zip(state.coefficients())
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt()
                        < 10.0 * cfg.tol
                });
                if !duplicate {
                    states.push(SampledState {
                        ic_index: i,
                        norm: state.norm(),
                        amplitude: state.amplitude(),
                        coefficients: state.coefficients().to_vec(),
                        residual,
                    });
                }
            }
            RunOutcome::Escaped { .. } => escaped += 1,
            RunOutcome::Unconverged { .. } => unconverged += 1,
        }
    }
    let dist_h = states.iter().map(|s| s.norm).fold(0.0, f64::max);
    Ok(AttractorSample {
        lambda: cfg.lambda,
        states,
        dist_h,
        converged,
        escaped,
        unconverged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(lambda: f64) -> SimConfig {
        SimConfig {
            lambda,
            truncation: 8,
            dt: 0.05,
            t_end: 400.0,
            ..SimConfig::default()
        }
    }

    #[test]
    fn initial_states_are_reproducible_and_bounded() {
        let a = random_initial_states(8, 8, 1.0, 7);
        let b = random_initial_states(8, 8, 1.0, 7);
        assert_eq!(a, b);
        assert_ne!(a, random_initial_states(8, 8, 1.0, 8));
        assert!(a
            .iter()
            .all(|u| u.norm() <= 1.0 + 1e-15 && u.norm() >= 0.25 - 1e-15));
    }

    #[test]
    fn subcritical_sample_is_the_origin() {
        let s = sample_attractor(&cfg(8.5)).unwrap();
        assert_eq!(s.converged, 8);
        assert!(s.dist_h < 1e-7, "{}", s.dist_h);
    }

    #[test]
    fn supercritical_sample_lies_on_the_circle() {
        let s = sample_attractor(&cfg(9.2)).unwrap();
        assert_eq!(s.converged, 8);
        let newton = super::super::stationary_amplitude(9.2, 8)
            .unwrap()
            .amplitude;
        for st in &s.states {
            assert!((st.amplitude - newton).abs() / newton < 0.02);
        }
        // distinct phases survive deduplication
        assert!(s.states.len() > 1);
    }

    #[test]
    fn too_few_initial_states() {
        assert!(sample_attractor(&SimConfig {
            ic_count: 4,
            ..cfg(9.2)
        })
        .is_err());
    }
}
