//! Boundary-fitted coordinate transformation: points near the shell are
//! shifted along the normal by the displacement, faded out by the cutoff β.
//!
//! Implemented for the flat periodic channel, where the map is
//! (x, y) ↦ (x, y + η(x) β((y − h)/κ)) with κ = h the channel height.

use super::cutoff::Cutoff;
use super::surface::{ShellDisplacement, SurfaceGeometry, SurfaceKind};
use crate::error::{Error, Result};
use crate::fourier::Fourier1D;
use rustfft::num_complex::Complex;

pub struct HanzawaMap {
    pub displacement: ShellDisplacement,
    pub cutoff: Cutoff,
    pub kappa: f64,
    length: f64,
    height: f64,
    eta_coeffs: Vec<Complex<f64>>,
    fourier: Fourier1D,
}

impl HanzawaMap {
    pub fn new(
        geom: &SurfaceGeometry,
        displacement: ShellDisplacement,
        cutoff: Cutoff,
    ) -> Result<Self> {
        let SurfaceKind::FlatPeriodicTop { length, height } = geom.kind else {
            return Err(Error::InvalidParameters(
                "the boundary transformation is implemented for the flat channel only".into(),
            ));
        };
        geom.validate_displacement(&displacement.values)?;
        let sup_bp = cutoff.sup_deriv();
        let sup_eta = displacement.sup_norm();
        if sup_eta * sup_bp >= geom.kappa {
            return Err(Error::InvalidDisplacement(format!(
                "cutoff slope {sup_bp:.3} too steep for sup|eta| = {sup_eta:.3}"
            )));
        }
        let fourier = Fourier1D::new(displacement.values.len(), length);
        let eta_coeffs = fourier.analyze(&displacement.values);
        Ok(HanzawaMap {
            displacement,
            cutoff,
            kappa: geom.kappa,
            length,
            height,
            eta_coeffs,
            fourier,
        })
    }

    pub fn eta_at(&self, x: f64) -> f64 {
        self.fourier.evaluate(&self.eta_coeffs, x)
    }

    fn eta_prime_at(&self, x: f64) -> f64 {
        // differentiate the interpolant term by term
        let n = self.eta_coeffs.len();
        let mut sum = 0.0;
        for (i, c) in self.eta_coeffs.iter().enumerate() {
            let k = self.fourier.wavenumber(i);
            if n % 2 == 0 && i == n / 2 {
                sum += -c.re * k * (k * x).sin();
            } else {
                let e = Complex::new(0.0, k * x).exp();
                sum += (Complex::new(0.0, k) * c * e).re;
            }
        }
        sum
    }

    fn check_reference(&self, p: [f64; 2]) -> Result<()> {
        if p[1] < -1e-12 || p[1] > self.height + 1e-12 {
            return Err(Error::OutOfDomain(format!(
                "y = {} outside [0, {}]",
                p[1], self.height
            )));
        }
        Ok(())
    }

    pub fn forward(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        self.check_reference(p)?;
        let s = (p[1] - self.height) / self.kappa;
        Ok([p[0], p[1] + self.eta_at(p[0]) * self.cutoff.eval(s)])
    }

    pub fn inverse(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        let eta = self.eta_at(p[0]);
        let top = self.height + eta;
        if p[1] < -1e-10 || p[1] > top + 1e-10 {
            return Err(Error::OutOfDomain(format!(
                "y = {} outside deformed range [0, {top}]",
                p[1]
            )));
        }
        // Monotone scalar root solve for y in y + eta*beta((y-h)/kappa) = Y,
        // Newton with bisection fallback.
        let (mut lo, mut hi) = (0.0f64, self.height);
        let mut y = p[1].clamp(0.0, self.height);
        for _ in 0..200 {
            let s = (y - self.height) / self.kappa;
            let g = y + eta * self.cutoff.eval(s) - p[1];
            if g.abs() < 1e-14 * (1.0 + p[1].abs()) {
                break;
            }
            if g > 0.0 {
                hi = y;
            } else {
                lo = y;
            }
            let dg = 1.0 + eta * self.cutoff.deriv(s) / self.kappa;
            let next = y - g / dg;
            y = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok([p[0], y])
    }

    pub fn jacobian(&self, p: [f64; 2]) -> Result<[[f64; 2]; 2]> {
        self.check_reference(p)?;
        let s = (p[1] - self.height) / self.kappa;
        Ok([
            [1.0, 0.0],
            [
                self.eta_prime_at(p[0]) * self.cutoff.eval(s),
                1.0 + self.eta_at(p[0]) * self.cutoff.deriv(s) / self.kappa,
            ],
        ])
    }

    pub fn det_jacobian(&self, p: [f64; 2]) -> Result<f64> {
        let j = self.jacobian(p)?;
        Ok(j[0][0] * j[1][1] - j[0][1] * j[1][0])
    }
}

#[cfg(test)]
mod tests {
    use super::super::cutoff::build_cutoff;
    use super::*;
    use rand::Rng;

    fn flat_geom(n: usize) -> SurfaceGeometry {
        SurfaceGeometry::flat(2.0 * std::f64::consts::PI, 1.0, n)
    }

    fn make_map(eta: Vec<f64>) -> HanzawaMap {
        let geom = flat_geom(eta.len());
        let sup = eta.iter().fold(0.0f64, |a, &v| a.max(v.abs())).max(1e-3);
        let cutoff = build_cutoff(geom.kappa, sup.min(0.85)).unwrap();
        let n = eta.len();
        let disp = ShellDisplacement {
            values: eta,
            velocity: vec![0.0; n],
            time: 0.0,
        };
        HanzawaMap::new(&geom, disp, cutoff).unwrap()
    }

    #[test]
    fn zero_displacement_is_identity() {
        let map = make_map(vec![0.0; 32]);
        let mut rng = rand::thread_rng();
        for _ in 0..50 {
            let p = [rng.gen_range(0.0..6.28), rng.gen_range(0.0..1.0)];
            let q = map.forward(p).unwrap();
            assert!((q[0] - p[0]).abs() < 1e-14 && (q[1] - p[1]).abs() < 1e-14);
            assert!((map.det_jacobian(p).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn shell_restriction_is_normal_offset() {
        let map = make_map(vec![0.1; 32]);
        let q = map.forward([2.0, 1.0]).unwrap();
        assert!((q[0] - 2.0).abs() < 1e-14);
        assert!((q[1] - 1.1).abs() < 1e-12);
    }

    #[test]
    fn inverse_consistency_random_displacement() {
        let n = 64;
        let eta: Vec<f64> = (0..n)
            .map(|i| {
                let x = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                0.4 * (x.sin() * 0.7 + 0.3 * (3.0 * x).cos())
            })
            .collect();
        let map = make_map(eta);
        let mut rng = rand::thread_rng();
        for _ in 0..200 {
            let p = [rng.gen_range(0.0..6.28), rng.gen_range(0.0..1.0)];
            let q = map.forward(p).unwrap();
            let back = map.inverse(q).unwrap();
            assert!((back[1] - p[1]).abs() <= 1e-10, "p={p:?} back={back:?}");
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let n = 64;
        let eta: Vec<f64> = (0..n)
            .map(|i| {
                let x = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                0.3 * x.sin() + 0.1 * (2.0 * x).cos()
            })
            .collect();
        let map = make_map(eta);
        let h = 1e-5;
        let mut rng = rand::thread_rng();
        for _ in 0..30 {
            let p = [rng.gen_range(0.0..6.28), rng.gen_range(2.0 * h..1.0 - 2.0 * h)];
            let j = map.jacobian(p).unwrap();
            assert!(map.det_jacobian(p).unwrap() > 0.0);
            for (col, delta) in [([h, 0.0], 0), ([0.0, h], 1)] {
                let fp = map.forward([p[0] + col[0], p[1] + col[1]]).unwrap();
                let fm = map.forward([p[0] - col[0], p[1] - col[1]]).unwrap();
                let fd = [(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)];
                assert!((fd[0] - j[0][delta]).abs() < 1e-8);
                assert!((fd[1] - j[1][delta]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn continuity_in_displacement() {
        let n = 32;
        let base: Vec<f64> = (0..n)
            .map(|i| 0.2 * (2.0 * std::f64::consts::PI * i as f64 / n as f64).sin())
            .collect();
        let delta = 0.05;
        let shifted: Vec<f64> = base.iter().map(|v| v + delta).collect();
        let m1 = make_map(base);
        let m2 = make_map(shifted);
        let mut rng = rand::thread_rng();
        for _ in 0..100 {
            let p = [rng.gen_range(0.0..6.28), rng.gen_range(0.0..1.0)];
            let a = m1.forward(p).unwrap();
            let b = m2.forward(p).unwrap();
            assert!((a[1] - b[1]).abs() <= delta + 1e-12);
        }
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let map = make_map(vec![0.1; 32]);
        assert!(matches!(
            map.forward([1.0, 1.5]),
            Err(Error::OutOfDomain(_))
        ));
        assert!(map.inverse([1.0, 1.2]).is_err());
    }
}
