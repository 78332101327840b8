use serde::{Deserialize, Serialize};

use crate::spectral::{TrigPoly, SIMULATION_TRUNCATION};

use super::cubic::CubicEvaluator;
use super::{ModeState, PdeError};

/// Norm above which an integration is stopped and flagged as escaped.
pub const ESCAPE_NORM: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub lambda: f64,
    pub truncation: u32,
    pub dt: f64,
    /// Integration horizon.
    pub t_end: f64,
    pub ic_seed: u64,
    pub ic_count: usize,
    pub ic_radius: f64,
    /// Convergence threshold for `‖u(t+1) − u(t)‖` and the residual.
    pub tol: f64,
    /// Keep every n-th step in recorded trajectories.
    pub record_every: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            lambda: 9.2,
            truncation: SIMULATION_TRUNCATION,
            dt: 1e-3,
            t_end: 200.0,
            ic_seed: 0,
            ic_count: 8,
            ic_radius: 1.0,
            tol: 1e-8,
            record_every: 100,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), PdeError> {
        let bad = |msg: String| Err(PdeError::Config(msg));
        if !self.lambda.is_finite() {
            return bad(format!("lambda = {}", self.lambda));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        if self.truncation < 4 {
            return bad(format!("truncation {} must be at least 4", self.truncation));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return bad(format!("tol = {} must be positive", self.tol));
        }
        if !(self.t_end >= self.dt && self.t_end.is_finite()) {
            return bad(format!("horizon {} shorter than one step", self.t_end));
        }
        if !(self.ic_radius > 0.0 && self.ic_radius.is_finite()) {
            return bad(format!("ic_radius = {} must be positive", self.ic_radius));
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1".into());
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt * (1.0 + 1e-12)).floor() as usize
    }
}

/// Eigenvalue `(1 − 4k²)² − λ` of mode `k ≥ 1`.
pub(crate) fn mode_eigenvalue(k: u32, lambda: f64) -> f64 {
    let kk = k as f64;
    (1.0 - 4.0 * kk * kk).powi(2) - lambda
}

/// `φ₁, φ₂, φ₃` with `φ_j(z) = Σ_n zⁿ / (n + j)!`.
fn phi(z: f64) -> [f64; 3] {
    if z.abs() < 1.0 {
        let mut out = [0.0; 3];
        for (j, slot) in out.iter_mut().enumerate() {
            // term_n = zⁿ / (n + j + 1)!
            let mut term = 1.0 / (1..=j + 1).product::<usize>() as f64;
            let mut sum = 0.0;
            for n in 0..30 {
                sum += term;
                term *= z / (n + j + 2) as f64;
            }
            *slot = sum;
        }
        out
    } else {
        let e = z.exp();
        let p1 = (e - 1.0) / z;
        let p2 = (e - 1.0 - z) / (z * z);
        let p3 = (e - 1.0 - z - 0.5 * z * z) / (z * z * z);
        [p1, p2, p3]
    }
}

/// Fourth-order exponential time differencing (Cox–Matthews) for the
/// diagonal stiff part, with the per-mode factors precomputed.
pub struct Etdrk4 {
    dt: f64,
    linear: Vec<f64>,
    exp_full: Vec<f64>,
    exp_half: Vec<f64>,
    half_phi1: Vec<f64>,
    w_u: Vec<f64>,
    w_ab: Vec<f64>,
    w_c: Vec<f64>,
    cubic: CubicEvaluator,
    scratch: [Vec<f64>; 7],
}

impl Etdrk4 {
    pub fn new(lambda: f64, truncation: u32, dt: f64) -> Self {
        let n = 2 * truncation as usize;
        let mut s = Etdrk4 {
            dt,
            linear: vec![0.0; n],
            exp_full: vec![0.0; n],
            exp_half: vec![0.0; n],
            half_phi1: vec![0.0; n],
            w_u: vec![0.0; n],
            w_ab: vec![0.0; n],
            w_c: vec![0.0; n],
            cubic: CubicEvaluator::new(truncation),
            scratch: std::array::from_fn(|_| vec![0.0; n]),
        };
        for i in 0..n {
            let c = -mode_eigenvalue(i as u32 / 2 + 1, lambda);
            let z = c * dt;
            let [p1, p2, p3] = phi(z);
            let [h1, _, _] = phi(0.5 * z);
            s.linear[i] = c;
            s.exp_full[i] = z.exp();
            s.exp_half[i] = (0.5 * z).exp();
            s.half_phi1[i] = 0.5 * dt * h1;
            s.w_u[i] = dt * (p1 - 3.0 * p2 + 4.0 * p3);
            s.w_ab[i] = dt * 2.0 * (p2 - 2.0 * p3);
            s.w_c[i] = dt * (4.0 * p3 - p2);
        }
        s
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances `u` in place by one step.
    pub fn step(&mut self, u: &mut [f64]) {
        let [nu, a, na, b, nb, c, nc] = &mut self.scratch;
        self.cubic.cube_into(u, -1.0, nu);
        for i in 0..u.len() {
            a[i] = self.exp_half[i] * u[i] + self.half_phi1[i] * nu[i];
        }
        self.cubic.cube_into(a, -1.0, na);
        for i in 0..u.len() {
            b[i] = self.exp_half[i] * u[i] + self.half_phi1[i] * na[i];
        }
        self.cubic.cube_into(b, -1.0, nb);
        for i in 0..u.len() {
            c[i] = self.exp_half[i] * a[i] + self.half_phi1[i] * (2.0 * nb[i] - nu[i]);
        }
        self.cubic.cube_into(c, -1.0, nc);
        for i in 0..u.len() {
            u[i] = self.exp_full[i] * u[i]
                + self.w_u[i] * nu[i]
                + self.w_ab[i] * (na[i] + nb[i])
                + self.w_c[i] * nc[i];
        }
    }

    /// `u_t = −L_λ u − u³` at `u`.
    pub fn rhs(&mut self, u: &ModeState) -> ModeState {
        let mut out = ModeState::zeros(u.truncation());
        let o = out.coefficients_mut();
        self.cubic.cube_into(u.coefficients(), -1.0, o);
        for (i, x) in u.coefficients().iter().enumerate() {
            o[i] += self.linear[i] * x;
        }
        out
    }
}

/// Right-hand side `−L_λ u − u³` of the Galerkin system.
pub fn pde_rhs(u: &ModeState, lambda: f64) -> ModeState {
    let mut cubic = CubicEvaluator::new(u.truncation());
    let mut out = ModeState::zeros(u.truncation());
    cubic.cube_into(u.coefficients(), -1.0, out.coefficients_mut());
    let o = out.coefficients_mut();
    for (i, x) in u.coefficients().iter().enumerate() {
        o[i] -= mode_eigenvalue(i as u32 / 2 + 1, lambda) * x;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdeTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<ModeState>,
    pub escaped: bool,
}

impl PdeTrajectory {
    pub fn last(&self) -> &ModeState {
        self.states
            .last()
            .expect("trajectory always holds the initial state")
    }
}

/// Integrates from `u0` up to `cfg.t_end`, recording every
/// `cfg.record_every` steps and always the final state.
pub fn integrate_pde(cfg: &SimConfig, u0: &TrigPoly<f64>) -> Result<PdeTrajectory, PdeError> {
    cfg.validate()?;
    let state = ModeState::from_trig(u0, cfg.truncation)?;
    integrate_state(cfg, state)
}

pub fn integrate_state(cfg: &SimConfig, u0: ModeState) -> Result<PdeTrajectory, PdeError> {
    cfg.validate()?;
    if u0.truncation() != cfg.truncation {
        return Err(PdeError::InvalidState(format!(
            "state truncation {} differs from configured {}",
            u0.truncation(),
            cfg.truncation
        )));
    }
    let mut stepper = Etdrk4::new(cfg.lambda, cfg.truncation, cfg.dt);
    let steps = cfg.steps();
    let mut u = u0;
    let mut times = vec![0.0];
    let mut states = vec![u.clone()];
    for n in 1..=steps {
        stepper.step(u.coefficients_mut());
        if u.norm().is_nan() || u.norm() > ESCAPE_NORM {
            return Ok(PdeTrajectory {
                times,
                states,
                escaped: true,
            });
        }
        if n % cfg.record_every == 0 || n == steps {
            times.push(n as f64 * cfg.dt);
            states.push(u.clone());
        }
    }
    Ok(PdeTrajectory {
        times,
        states,
        escaped: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Mode;

    fn cfg(lambda: f64, dt: f64, t_end: f64) -> SimConfig {
        SimConfig {
            lambda,
            truncation: 8,
            dt,
            t_end,
            record_every: 1,
            ..SimConfig::default()
        }
    }

    #[test]
    fn phi_series_and_closed_form_agree_near_one() {
        for z in [-1.0 - 1e-9, 1.0 + 1e-9, -0.999_999, 0.999_999] {
            let a = phi(z);
            let e = z.exp();
            let b = [
                (e - 1.0) / z,
                (e - 1.0 - z) / (z * z),
                (e - 1.0 - z - 0.5 * z * z) / z.powi(3),
            ];
            for j in 0..3 {
                assert!((a[j] - b[j]).abs() < 1e-12, "z = {z}, j = {j}");
            }
        }
        assert_eq!(phi(0.0), [1.0, 0.5, 1.0 / 6.0]);
    }

    #[test]
    fn zero_stays_zero() {
        let t = integrate_pde(&cfg(9.2, 0.01, 1.0), &TrigPoly::zero(8)).unwrap();
        assert!(t.states.iter().all(|s| s.norm() == 0.0));
        assert_eq!(t.states.len(), 101);
    }

    #[test]
    fn linear_mode_decays_exactly() {
        // below criticality and at tiny amplitude the cubic is negligible
        let u0 = TrigPoly::from_terms(8, [(Mode::cos(2).unwrap(), 1e-8)]).unwrap();
        let t = integrate_pde(&cfg(9.0, 0.001, 0.01), &u0).unwrap();
        let want = 1e-8 * (-216.0 * 0.01f64).exp();
        assert!((t.last().mode(2).1 - want).abs() < 1e-20);
    }

    #[test]
    fn fourth_order_in_time() {
        // center-mode data only: an O(1) stiff component would add an
        // initial layer that dt = 0.1 cannot resolve
        let u0 = TrigPoly::from_terms(
            8,
            [(Mode::sin(1).unwrap(), 0.8), (Mode::cos(1).unwrap(), 0.3)],
        )
        .unwrap();
        let run = |dt: f64| {
            integrate_pde(
                &SimConfig {
                    record_every: 1000,
                    ..cfg(9.2, dt, 2.0)
                },
                &u0,
            )
            .unwrap()
            .last()
            .clone()
        };
        let reference = run(0.2 / 32.0);
        let e1 = run(0.2).distance(&reference);
        let e2 = run(0.1).distance(&reference);
        let ratio = e1 / e2;
        assert!((8.0..=32.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn escape_and_config_errors() {
        assert!(integrate_pde(
            &SimConfig {
                dt: 0.0,
                ..SimConfig::default()
            },
            &TrigPoly::zero(8)
        )
        .is_err());
        assert!(integrate_pde(
            &SimConfig {
                truncation: 3,
                ..SimConfig::default()
            },
            &TrigPoly::zero(3)
        )
        .is_err());
        let big = TrigPoly::from_terms(8, [(Mode::sin(1).unwrap(), 2e6)]).unwrap();
        assert!(integrate_pde(&cfg(9.2, 0.01, 1.0), &big).unwrap().escaped);
    }
}
