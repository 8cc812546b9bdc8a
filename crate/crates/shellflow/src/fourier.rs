//! Real Fourier-spectral helpers on uniform periodic grids.

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Spectral operator set for one periodic direction.
pub struct Fourier1D {
    n: usize,
    period: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fourier1D {
    pub fn new(n: usize, period: f64) -> Self {
        assert!(n >= 2 && period > 0.0);
        let mut planner = FftPlanner::new();
        Self {
            n,
            period,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Signed wavenumber (physical, 2*pi/period scaled) of spectral index i.
    pub fn wavenumber(&self, i: usize) -> f64 {
        let k = if i <= self.n / 2 {
            i as f64
        } else {
            i as f64 - self.n as f64
        };
        k * 2.0 * std::f64::consts::PI / self.period
    }

    /// Forward transform of real samples; coefficients scaled by 1/n so that
    /// synthesis is a plain sum of `c_k e^{i k x}`.
    pub fn analyze(&self, values: &[f64]) -> Vec<Complex<f64>> {
        assert_eq!(values.len(), self.n);
        let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        for c in &mut buf {
            *c *= scale;
        }
        buf
    }

    /// Inverse transform back to real samples.
    pub fn synthesize(&self, coeffs: &[Complex<f64>]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.n);
        let mut buf = coeffs.to_vec();
        self.inverse.process(&mut buf);
        buf.iter().map(|c| c.re).collect()
    }

    /// Spectral derivative of the given order.
    pub fn derivative(&self, values: &[f64], order: usize) -> Vec<f64> {
        let mut coeffs = self.analyze(values);
        for (i, c) in coeffs.iter_mut().enumerate() {
            let k = self.wavenumber(i);
            // Nyquist mode has no well-defined odd derivative on a real grid.
            let nyquist = self.n % 2 == 0 && i == self.n / 2;
            let factor = Complex::new(0.0, k).powu(order as u32);
            *c *= if nyquist && order % 2 == 1 {
                Complex::new(0.0, 0.0)
            } else {
                factor
            };
        }
        self.synthesize(&coeffs)
    }

    /// Apply a real multiplier m(|k|) in spectral space.
    pub fn apply_symbol(&self, values: &[f64], symbol: impl Fn(f64) -> f64) -> Vec<f64> {
        let mut coeffs = self.analyze(values);
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c *= symbol(self.wavenumber(i).abs());
        }
        self.synthesize(&coeffs)
    }

    /// Trigonometric interpolation of the sampled series at an arbitrary point.
    pub fn evaluate(&self, coeffs: &[Complex<f64>], x: f64) -> f64 {
        let mut sum = Complex::new(0.0, 0.0);
        for (i, c) in coeffs.iter().enumerate() {
            if self.n % 2 == 0 && i == self.n / 2 {
                // Split the Nyquist mode symmetrically to keep the interpolant real.
                let k = self.wavenumber(i);
                sum += c * (k * x).cos();
            } else {
                let k = self.wavenumber(i);
                sum += c * Complex::new(0.0, k * x).exp();
            }
        }
        sum.re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_sin3x() {
        let n = 32;
        let f = Fourier1D::new(n, 2.0 * std::f64::consts::PI);
        let vals: Vec<f64> = (0..n)
            .map(|i| (3.0 * 2.0 * std::f64::consts::PI * i as f64 / n as f64).sin())
            .collect();
        let d2 = f.derivative(&vals, 2);
        for (i, &v) in d2.iter().enumerate() {
            let x = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            assert!((v + 9.0 * (3.0 * x).sin()).abs() < 1e-11);
        }
    }

    #[test]
    fn interpolation_matches_samples_and_midpoints() {
        let n = 16;
        let period = 2.0 * std::f64::consts::PI;
        let f = Fourier1D::new(n, period);
        let vals: Vec<f64> = (0..n)
            .map(|i| {
                let x = period * i as f64 / n as f64;
                0.3 * x.sin() + 0.1 * (2.0 * x).cos()
            })
            .collect();
        let coeffs = f.analyze(&vals);
        for i in 0..2 * n {
            let x = period * i as f64 / (2 * n) as f64;
            let expected = 0.3 * x.sin() + 0.1 * (2.0 * x).cos();
            assert!((f.evaluate(&coeffs, x) - expected).abs() < 1e-12);
        }
    }
}
