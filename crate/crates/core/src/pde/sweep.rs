use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{classify_block, invariant_circle};
use crate::reduction::parameterized_reduction;
use crate::scalar::{format_f64, rational_from_f64};

use super::{sample_attractor, stationary_amplitude, PdeError, SimConfig};

pub const SWEEP_CSV_HEADER: &str =
    "lambda,dist_H,r_star_reduced,amplitude_newton,block_verdict,converged_count,escaped_count";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    /// Template; `lambda` is replaced per row.
    pub sim: SimConfig,
    pub order: u32,
    pub block_radius: f64,
    pub block_samples: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            sim: SimConfig::default(),
            order: 5,
            block_radius: 0.01,
            block_samples: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub dist_h: Option<f64>,
    pub r_star_reduced: Option<f64>,
    pub amplitude_newton: Option<f64>,
    pub block_verdict: Option<String>,
    pub converged_count: usize,
    pub escaped_count: usize,
    /// Failures of individual stages; the other columns are still filled.
    pub errors: Vec<String>,
}

/// One row per `λ`, computed in parallel and returned in input order.
pub fn bifurcation_sweep(lambdas: &[f64], cfg: &SweepConfig) -> Result<Vec<SweepRow>, PdeError> {
    if lambdas.is_empty() {
        return Err(PdeError::Config("empty lambda list".into()));
    }
    cfg.sim.validate()?;
    Ok(lambdas
        .par_iter()
        .map(|&lambda| sweep_row(lambda, cfg))
        .collect())
}

fn sweep_row(lambda: f64, cfg: &SweepConfig) -> SweepRow {
    let mut errors = Vec::new();
    let sim = SimConfig {
        lambda,
        ..cfg.sim.clone()
    };
    let (dist_h, converged_count, escaped_count) = match sample_attractor(&sim) {
        Ok(s) if s.converged == 0 => {
            errors.push(format!(
                "attractor: none of {} runs converged by t = {}",
                sim.ic_count, sim.t_end
            ));
            (None, 0, s.escaped)
        }
        Ok(s) => (Some(s.dist_h), s.converged, s.escaped),
        Err(e) => {
            errors.push(format!("attractor: {e}"));
            (None, 0, 0)
        }
    };
    let mut r_star_reduced = None;
    let mut block_verdict = None;
    match rational_from_f64(lambda)
        .map_err(|e| e.to_string())
        .and_then(|q| parameterized_reduction(&q, cfg.order).map_err(|e| e.to_string()))
    {
        Ok(vf) => {
            match invariant_circle(&vf) {
                Ok(c) => r_star_reduced = c.map(|c| c.radius),
                Err(e) => errors.push(format!("circle: {e}")),
            }
            match classify_block(&vf, cfg.block_radius, cfg.block_samples) {
                Ok(b) => block_verdict = Some(b.verdict.as_str().to_string()),
                Err(e) => errors.push(format!("block: {e}")),
            }
        }
        Err(e) => errors.push(format!("reduction: {e}")),
    }
    let amplitude_newton = match stationary_amplitude(lambda, cfg.sim.truncation) {
        Ok(s) => Some(s.amplitude),
        Err(e) => {
            errors.push(format!("newton: {e}"));
            None
        }
    };
    SweepRow {
        lambda,
        dist_h,
        r_star_reduced,
        amplitude_newton,
        block_verdict,
        converged_count,
        escaped_count,
        errors,
    }
}

/// CSV with [`SWEEP_CSV_HEADER`]; missing values are empty fields.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            format_f64(r.lambda),
            opt(r.dist_h),
            opt(r.r_star_reduced),
            opt(r.amplitude_newton),
            r.block_verdict.as_deref().unwrap_or(""),
            r.converged_count,
            r.escaped_count
        ));
    }
    out
}
