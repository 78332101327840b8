use crate::reduction::{FloatField, ReducedVectorField};

use super::{DynamicsError, PlanarState};

/// Norm above which a trajectory is cut off and marked escaped.
pub const ESCAPE_NORM: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedTrajectory {
    pub dt: f64,
    pub states: Vec<PlanarState>,
    pub escaped: bool,
}

impl ReducedTrajectory {
    pub fn last(&self) -> PlanarState {
        *self
            .states
            .last()
            .expect("trajectory always holds the initial state")
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.states.len()).map(move |i| i as f64 * self.dt)
    }
}

/// Classical RK4 with fixed step; `⌊T/dt⌋ + 1` states unless the orbit escapes.
pub fn integrate_reduced(
    vf: &ReducedVectorField,
    s0: PlanarState,
    horizon: f64,
    dt: f64,
) -> Result<ReducedTrajectory, DynamicsError> {
    if !(dt > 0.0 && dt.is_finite() && horizon.is_finite() && horizon >= dt) {
        return Err(DynamicsError::InvalidStep { dt, horizon });
    }
    let s0 = PlanarState::new(s0.s1, s0.s2)?;
    let field = vf.to_float();
    // the epsilon keeps T/dt = 1000 from flooring to 999
    let steps = (horizon / dt * (1.0 + 1e-12)).floor() as usize;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(s0);
    let mut s = s0;
    for _ in 0..steps {
        s = rk4_step(&field, s, dt);
        if s.norm().is_nan() || s.norm() > ESCAPE_NORM {
            return Ok(ReducedTrajectory {
                dt,
                states,
                escaped: true,
            });
        }
        states.push(s);
    }
    Ok(ReducedTrajectory {
        dt,
        states,
        escaped: false,
    })
}

pub(crate) fn rk4_step(field: &FloatField, s: PlanarState, dt: f64) -> PlanarState {
    let f = |p: (f64, f64)| field.eval(p.0, p.1);
    let x = (s.s1, s.s2);
    let k1 = f(x);
    let k2 = f((x.0 + 0.5 * dt * k1.0, x.1 + 0.5 * dt * k1.1));
    let k3 = f((x.0 + 0.5 * dt * k2.0, x.1 + 0.5 * dt * k2.1));
    let k4 = f((x.0 + dt * k3.0, x.1 + dt * k3.1));
    PlanarState {
        s1: x.0 + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        s2: x.1 + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    }
}
