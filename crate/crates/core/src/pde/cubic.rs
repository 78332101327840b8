use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::ModeState;

/// Alias-free `u³` for a truncated state, by zero-padded FFT on
/// `N ≥ 4K + 2` points. The mean of `u³` is discarded.
pub struct CubicEvaluator {
    truncation: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl CubicEvaluator {
    pub fn new(truncation: u32) -> Self {
        let k = truncation as usize;
        let n = (4 * k + 2).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        CubicEvaluator {
            truncation: k,
            forward,
            inverse,
            buf: vec![Complex64::new(0.0, 0.0); n],
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    pub fn grid_size(&self) -> usize {
        self.buf.len()
    }

    /// Writes the coefficients of `scale · u³` into `out` (same layout as
    /// [`ModeState::coefficients`]).
    pub fn cube_into(&mut self, u: &[f64], scale: f64, out: &mut [f64]) {
        let n = self.buf.len();
        let k = self.truncation;
        self.buf.fill(Complex64::new(0.0, 0.0));
        for m in 1..=k {
            let (a, b) = (u[2 * m - 2], u[2 * m - 1]);
            let c = Complex64::new(0.5 * b, -0.5 * a);
            self.buf[m] = c;
            self.buf[n - m] = c.conj();
        }
        self.inverse
            .process_with_scratch(&mut self.buf, &mut self.scratch);
        for z in self.buf.iter_mut() {
            let v = z.re;
            *z = Complex64::new(v * v * v, 0.0);
        }
        self.forward
            .process_with_scratch(&mut self.buf, &mut self.scratch);
        let norm = 2.0 * scale / n as f64;
        for m in 1..=k {
            let d = self.buf[m];
            out[2 * m - 2] = -norm * d.im;
            out[2 * m - 1] = norm * d.re;
        }
    }

    pub fn cube(&mut self, u: &ModeState) -> ModeState {
        let mut out = ModeState::zeros(u.truncation());
        self.cube_into(u.coefficients(), 1.0, out.coefficients_mut());
        out
    }
}
