use std::f64::consts::TAU;

use num_traits::Signed;
use serde::Serialize;

use crate::reduction::{RadialPolynomial, ReducedVectorField};
use crate::scalar::{rational_to_string, Rational, Scalar};

use super::integrate::integrate_reduced;
use super::{DynamicsError, PlanarState};

/// Upper end of the root search for `ρ`.
pub const CIRCLE_SEARCH_RADIUS: f64 = 10.0;
const SCAN_POINTS: usize = 20_000;
const BISECTION_TOL: f64 = 1e-12;

/// Circle `|s| = radius` on which the radial profile vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantCircle {
    pub radius: f64,
    pub lambda: f64,
    /// `ρ(radius)`.
    pub residual: f64,
    /// Sign changes of `ρ` seen on `(0, 10]`.
    pub root_count: usize,
}

/// Smallest positive root of the radial profile in `(0, 10]`, or `None`
/// when the profile keeps one sign there.
pub fn invariant_circle(vf: &ReducedVectorField) -> Result<Option<InvariantCircle>, DynamicsError> {
    let rho = vf.radial_polynomial()?;
    if rho.is_zero() {
        return Ok(None);
    }
    // eval_reduced(0) is the lowest coefficient, the sign of ρ near 0+
    let f = |r: f64| rho.eval_reduced(r);
    let mut brackets = Vec::new();
    let mut prev = (0.0, f(0.0));
    for i in 1..=SCAN_POINTS {
        let r = CIRCLE_SEARCH_RADIUS * i as f64 / SCAN_POINTS as f64;
        let v = f(r);
        if v == 0.0 || v.signum() != prev.1.signum() {
            brackets.push((prev.0, r));
        }
        if v != 0.0 {
            prev = (r, v);
        }
    }
    let Some(&(mut lo, mut hi)) = brackets.first() else {
        return Ok(None);
    };
    let lo_sign = f(lo).signum();
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let radius = 0.5 * (lo + hi);
    Ok(Some(InvariantCircle {
        radius,
        lambda: vf.lambda().to_f64(),
        residual: rho.eval(radius),
        root_count: brackets.len(),
    }))
}

/// `n` equally spaced states on `|s| = radius`.
pub fn ring_probes(radius: f64, n: usize) -> Vec<PlanarState> {
    (0..n)
        .map(|i| PlanarState::polar(radius, TAU * i as f64 / n as f64))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCheckOptions {
    pub horizon: f64,
    pub dt: f64,
    /// Required `||s(T)| − r*|` forward in time.
    pub forward_tol: f64,
    /// Required `|s(−T)|` for probes inside the circle.
    pub backward_tol: f64,
}

impl Default for PairCheckOptions {
    fn default() -> Self {
        PairCheckOptions {
            horizon: 500.0,
            dt: 0.01,
            forward_tol: 1e-4,
            backward_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeOutcome {
    pub probe: PlanarState,
    pub forward_distance: f64,
    /// `None` for probes outside the circle, whose backward orbit leaves
    /// every bounded set.
    pub backward_norm: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractorRepellerReport {
    pub circle: InvariantCircle,
    pub outcomes: Vec<ProbeOutcome>,
    pub passed: bool,
}

impl AttractorRepellerReport {
    pub fn failures(&self) -> impl Iterator<Item = &ProbeOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

/// Forward orbits of the probes must end on the circle; backward orbits of
/// probes inside it must end at the origin.
pub fn check_attractor_repeller(
    vf: &ReducedVectorField,
    circle: &InvariantCircle,
    probes: &[PlanarState],
    opts: PairCheckOptions,
) -> Result<AttractorRepellerReport, DynamicsError> {
    if probes.is_empty() {
        return Err(DynamicsError::Precondition("no probes".into()));
    }
    if let Some(p) = probes.iter().find(|p| p.norm() == 0.0) {
        return Err(DynamicsError::Precondition(format!(
            "probe ({}, {}) is the origin",
            p.s1, p.s2
        )));
    }
    let reversed = vf.time_reversed();
    let mut outcomes = Vec::with_capacity(probes.len());
    for &probe in probes {
        let fwd = integrate_reduced(vf, probe, opts.horizon, opts.dt)?;
        let forward_distance = if fwd.escaped {
            f64::INFINITY
        } else {
            (fwd.last().norm() - circle.radius).abs()
        };
        let backward_norm = if probe.norm() < circle.radius {
            let bwd = integrate_reduced(&reversed, probe, opts.horizon, opts.dt)?;
            Some(if bwd.escaped {
                f64::INFINITY
            } else {
                bwd.last().norm()
            })
        } else {
            None
        };
        let passed = forward_distance < opts.forward_tol
            && backward_norm.is_none_or(|b| b < opts.backward_tol);
        outcomes.push(ProbeOutcome {
            probe,
            forward_distance,
            backward_norm,
            passed,
        });
    }
    let passed = outcomes.iter().all(|o| o.passed);
    Ok(AttractorRepellerReport {
        circle: *circle,
        outcomes,
        passed,
    })
}

/// Exact evidence that `ρ(r) < 0` for `0 < r ≤ radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolationCertificate {
    pub radius: Rational,
    pub lowest_power: u32,
    /// `c_low + Σ_{j > low, c_j > 0} c_j radius^{j − low}`; negative.
    pub upper_bound: Rational,
}

/// Writes `ρ(r) = r^low (c_low + Σ c_j r^{j−low})`. On `(0, R]` the bracket is
/// at most `c_low` plus its positive terms evaluated at `R`, so a negative
/// bound certifies `ρ < 0` there and the origin is the only equilibrium in
/// the disk.
pub fn certify_origin_isolation(
    vf: &ReducedVectorField,
    radius: &Rational,
) -> Result<IsolationCertificate, DynamicsError> {
    if !radius.is_positive() {
        return Err(DynamicsError::Precondition(
            "radius must be positive".into(),
        ));
    }
    let rho = vf.radial_polynomial()?;
    certify_profile(&rho, radius)
}

fn certify_profile(
    rho: &RadialPolynomial,
    radius: &Rational,
) -> Result<IsolationCertificate, DynamicsError> {
    let uncertified = |bound: &Rational| DynamicsError::Uncertified {
        radius: rational_to_string(radius),
        bound: rational_to_string(bound),
    };
    let Some((low, lead)) = rho.lowest() else {
        return Err(uncertified(&Rational::zero()));
    };
    let bound = rho
        .coefficients()
        .iter()
        .filter(|(p, c)| **p > low && c.is_positive())
        .fold(lead.clone(), |acc, (p, c)| {
            acc + c.clone() * num_traits::pow(radius.clone(), (*p - low) as usize)
        });
    if !Signed::is_negative(&bound) {
        return Err(uncertified(&bound));
    }
    Ok(IsolationCertificate {
        radius: radius.clone(),
        lowest_power: low,
        upper_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{parameterized_reduction, reduced_vector_field, solve_center_manifold};
    use crate::scalar::{parse_rational, ratio};

    fn field(lambda: &str) -> ReducedVectorField {
        parameterized_reduction(&parse_rational(lambda).unwrap(), 5).unwrap()
    }

    #[test]
    fn circle_at_9_2() {
        let c = invariant_circle(&field("9.2")).unwrap().unwrap();
        assert!((c.radius - 0.5164).abs() < 1e-3, "{}", c.radius);
        assert!(c.residual.abs() < 1e-12);
        assert_eq!(c.root_count, 1);
    }

    #[test]
    fn no_circle_at_or_below_criticality() {
        assert!(invariant_circle(&field("9")).unwrap().is_none());
        assert!(invariant_circle(&field("8.8")).unwrap().is_none());
    }

    #[test]
    fn circle_matches_quadratic_root_of_truncated_profile() {
        // (λ−9) − ¾ r² = 0 to leading order
        for (lam, h) in [("9.05", 0.05), ("9.1", 0.1)] {
            let c = invariant_circle(&field(lam)).unwrap().unwrap();
            let lead = 2.0 * (h / 3.0f64).sqrt();
            assert!((c.radius - lead).abs() / lead < 1e-3);
        }
    }

    #[test]
    fn pair_check_inside_and_outside() {
        let vf = field("9.2");
        let c = invariant_circle(&vf).unwrap().unwrap();
        let mut probes = ring_probes(c.radius / 2.0, 8);
        probes.push(PlanarState::new(2.0 * c.radius, 0.0).unwrap());
        let report =
            check_attractor_repeller(&vf, &c, &probes, PairCheckOptions::default()).unwrap();
        assert!(report.passed, "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.outcomes.last().unwrap().backward_norm.is_none());
    }

    #[test]
    fn origin_probe_is_rejected() {
        let vf = field("9.2");
        let c = invariant_circle(&vf).unwrap().unwrap();
        let err =
            check_attractor_repeller(&vf, &c, &[PlanarState::ORIGIN], PairCheckOptions::default());
        assert!(matches!(err, Err(DynamicsError::Precondition(_))));
    }

    #[test]
    fn isolation_certificate_at_criticality() {
        let vf = reduced_vector_field(&solve_center_manifold(&ratio(9, 1), 3).unwrap(), 5).unwrap();
        let cert = certify_origin_isolation(&vf, &ratio(1, 1)).unwrap();
        assert_eq!(cert.lowest_power, 3);
        assert_eq!(cert.upper_bound, ratio(-3, 4) + ratio(3, 19456));
        // the quintic term wins once r² exceeds 4864
        assert!(certify_origin_isolation(&vf, &ratio(69, 1)).is_ok());
        assert!(certify_origin_isolation(&vf, &ratio(70, 1)).is_err());
        assert!(certify_origin_isolation(&vf, &ratio(0, 1)).is_err());
    }

    #[test]
    fn supercritical_profile_is_not_certified() {
        assert!(matches!(
            certify_origin_isolation(&field("9.1"), &ratio(1, 100)),
            Err(DynamicsError::Uncertified { .. })
        ));
    }
}
