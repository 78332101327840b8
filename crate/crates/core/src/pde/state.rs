use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::spectral::{from_coefficient_vector, to_coefficient_vector, TrigPoly};

use super::PdeError;

/// Galerkin state `u = Σ_{k ≤ K} a_k sin 2kx + b_k cos 2kx`, stored as
/// `[a₁, b₁, a₂, b₂, …]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeState {
    coeffs: Vec<f64>,
}

impl ModeState {
    pub fn zeros(truncation: u32) -> Self {
        ModeState {
            coeffs: vec![0.0; 2 * truncation as usize],
        }
    }

    pub fn from_coefficients(coeffs: Vec<f64>) -> Result<Self, PdeError> {
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(2) {
            return Err(PdeError::InvalidState(format!(
                "coefficient vector of length {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(PdeError::InvalidState("non-finite coefficient".into()));
        }
        Ok(ModeState { coeffs })
    }

    /// Embeds a mean-zero polynomial with wavenumbers up to `truncation`.
    pub fn from_trig(u: &TrigPoly<f64>, truncation: u32) -> Result<Self, PdeError> {
        if !u.is_mean_zero() {
            return Err(PdeError::InvalidState(
                "initial state has a constant term".into(),
            ));
        }
        if u.max_k() > truncation {
            return Err(PdeError::InvalidState(format!(
                "initial state uses k = {} above truncation {truncation}",
                u.max_k()
            )));
        }
        Self::from_coefficients(to_coefficient_vector(u, truncation)?)
    }

    pub fn to_trig(&self) -> TrigPoly<f64> {
        from_coefficient_vector(&self.coeffs, self.truncation())
    }

    pub fn truncation(&self) -> u32 {
        (self.coeffs.len() / 2) as u32
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub(crate) fn coefficients_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// `(a_k, b_k)`, the `sin 2kx` and `cos 2kx` coefficients.
    pub fn mode(&self, k: u32) -> (f64, f64) {
        let i = 2 * (k as usize - 1);
        (self.coeffs[i], self.coeffs[i + 1])
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &ModeState) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Magnitude of the `k = 1` component.
    pub fn amplitude(&self) -> f64 {
        let (a, b) = self.mode(1);
        a.hypot(b)
    }

    /// `u(· + θ)`.
    pub fn translate(&self, theta: f64) -> ModeState {
        let mut out = self.clone();
        for k in 1..=self.truncation() {
            let (a, b) = self.mode(k);
            let (s, c) = (2.0 * k as f64 * theta).sin_cos();
            let i = 2 * (k as usize - 1);
            out.coeffs[i] = a * c - b * s;
            out.coeffs[i + 1] = a * s + b * c;
        }
        out
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        (1..=self.truncation())
            .map(|k| {
                let (a, b) = self.mode(k);
                let (s, c) = (2.0 * k as f64 * x).sin_cos();
                a * s + b * c
            })
            .sum()
    }
}

/// `V(u) = ½∫(u + u'')² − ∫(λu²/2 − u⁴/4)` over `(0, π)`.
///
/// The quadratic part is read off by Parseval; `∫u⁴ = π Σ_m |(u²)_m|²` with
/// the coefficients of `u²` from a direct convolution.
pub fn lyapunov_value(u: &TrigPoly<f64>, lambda: f64) -> f64 {
    // a constant term c contributes ½c² − λc²/2 at k = 0 and joins the convolution
    let k_max = u.max_k() as usize;
    let mut c = vec![Complex64::new(0.0, 0.0); 2 * k_max + 1];
    let mut quadratic = 0.0;
    for (mode, &v) in u.terms() {
        let k = mode.k() as usize;
        let factor = (1.0 - 4.0 * (k * k) as f64).powi(2) - lambda;
        match mode.wave() {
            crate::spectral::Wave::Const => {
                quadratic += PI * factor * v * v / 2.0;
                c[k_max] += v;
            }
            crate::spectral::Wave::Sin => {
                quadratic += PI * factor * v * v / 4.0;
                c[k_max + k] += Complex64::new(0.0, -0.5 * v);
                c[k_max - k] += Complex64::new(0.0, 0.5 * v);
            }
            crate::spectral::Wave::Cos => {
                quadratic += PI * factor * v * v / 4.0;
                c[k_max + k] += 0.5 * v;
                c[k_max - k] += 0.5 * v;
            }
        }
    }
    let n = c.len();
    let mut square = vec![Complex64::new(0.0, 0.0); 2 * n - 1];
    for (i, x) in c.iter().enumerate() {
        if x.norm_sqr() == 0.0 {
            continue;
        }
        for (j, y) in c.iter().enumerate() {
            square[i + j] += x * y;
        }
    }
    let quartic = PI * square.iter().map(|z| z.norm_sqr()).sum::<f64>();
    quadratic + quartic / 4.0
}

impl ModeState {
    pub fn lyapunov(&self, lambda: f64) -> f64 {
        lyapunov_value(&self.to_trig(), lambda)
    }
}
