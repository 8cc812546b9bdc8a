//! Spherical-harmonic transforms and pointwise partial derivatives on a
//! Gauss-Legendre x uniform longitude grid.
//!
//! Fields are stored row-major as `f[i * n_phi + j]` with colatitude index `i`
//! (Gauss-Legendre nodes, poles excluded) and longitude index `j`.

use crate::fourier::Fourier1D;
use crate::quad::gauss_legendre;
use rustfft::num_complex::Complex;

/// Transform engine for scalar fields on a sphere of radius `radius`.
pub struct SphereHarmonics {
    pub radius: f64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub lmax: usize,
    /// Colatitude nodes theta_i (increasing).
    pub theta: Vec<f64>,
    /// Gauss-Legendre weights in mu = cos(theta).
    pub weights: Vec<f64>,
    fourier: Fourier1D,
    // Normalized associated Legendre tables and their theta-derivatives,
    // indexed [theta][plm_index(l, m)].
    p: Vec<Vec<f64>>,
    p_t: Vec<Vec<f64>>,
    p_tt: Vec<Vec<f64>>,
    p_ttt: Vec<Vec<f64>>,
}

/// Packed (l, m>=0) index.
fn plm_index(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

/// Partial derivatives of a scalar field in (theta, phi) coordinates,
/// each sampled on the full grid.
pub struct SpherePartials {
    pub f: Vec<f64>,
    pub ft: Vec<f64>,
    pub fp: Vec<f64>,
    pub ftt: Vec<f64>,
    pub ftp: Vec<f64>,
    pub fpp: Vec<f64>,
    pub fttt: Vec<f64>,
    pub fttp: Vec<f64>,
    pub ftpp: Vec<f64>,
    pub fppp: Vec<f64>,
}

impl SphereHarmonics {
    pub fn new(radius: f64, lmax: usize) -> Self {
        let n_theta = lmax + 1;
        let n_phi = (2 * lmax + 2).next_power_of_two().max(4);
        Self::with_grid(radius, lmax, n_theta, n_phi)
    }

    pub fn with_grid(radius: f64, lmax: usize, n_theta: usize, n_phi: usize) -> Self {
        assert!(n_theta > lmax, "theta resolution too low for lmax");
        assert!(n_phi > 2 * lmax, "phi resolution too low for lmax");
        let (mu, w) = gauss_legendre(n_theta);
        let theta: Vec<f64> = mu.iter().rev().map(|&m| m.acos()).collect();
        let weights: Vec<f64> = w.iter().rev().cloned().collect();

        let mut p = Vec::with_capacity(n_theta);
        let mut p_t = Vec::with_capacity(n_theta);
        let mut p_tt = Vec::with_capacity(n_theta);
        let mut p_ttt = Vec::with_capacity(n_theta);
        for &t in &theta {
            let (a, b, c, d) = legendre_tables(lmax, t);
            p.push(a);
            p_t.push(b);
            p_tt.push(c);
            p_ttt.push(d);
        }
        Self {
            radius,
            n_theta,
            n_phi,
            lmax,
            theta,
            weights,
            fourier: Fourier1D::new(n_phi, 2.0 * std::f64::consts::PI),
            p,
            p_t,
            p_tt,
            p_ttt,
        }
    }

    pub fn grid_len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * j as f64 / self.n_phi as f64
    }

    /// Surface area element weight of grid point (i, j): R^2 w_i (2 pi / n_phi).
    pub fn area_weight(&self, i: usize) -> f64 {
        self.radius * self.radius * self.weights[i] * 2.0 * std::f64::consts::PI
            / self.n_phi as f64
    }

    /// Total surface integral of a sampled field.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.n_theta {
            let w = self.area_weight(i);
            for j in 0..self.n_phi {
                sum += w * f[i * self.n_phi + j];
            }
        }
        sum
    }

    /// Analysis into coefficients a[l][m], m = -l..l packed as `m + l`.
    pub fn analyze(&self, f: &[f64]) -> Vec<Vec<Complex<f64>>> {
        assert_eq!(f.len(), self.grid_len());
        // FFT each latitude ring.
        let rings: Vec<Vec<Complex<f64>>> = (0..self.n_theta)
            .map(|i| self.fourier.analyze(&f[i * self.n_phi..(i + 1) * self.n_phi]))
            .collect();
        let mut coeffs: Vec<Vec<Complex<f64>>> = (0..=self.lmax)
            .map(|l| vec![Complex::new(0.0, 0.0); 2 * l + 1])
            .collect();
        for l in 0..=self.lmax {
            for m in -(l as isize)..=(l as isize) {
                let ma = m.unsigned_abs();
                let col = if m >= 0 {
                    m as usize
                } else {
                    self.n_phi - ma
                };
                let mut a = Complex::new(0.0, 0.0);
                for i in 0..self.n_theta {
                    a += self.weights[i] * self.p[i][plm_index(l, ma)] * rings[i][col];
                }
                coeffs[l][(m + l as isize) as usize] = a * 2.0 * std::f64::consts::PI;
            }
        }
        coeffs
    }

    /// Synthesis back to the grid.
    pub fn synthesize(&self, coeffs: &[Vec<Complex<f64>>]) -> Vec<f64> {
        self.synthesize_with(coeffs, 0, 0, 1.0)
    }

    /// Synthesis of a derivative: `dt` theta-derivatives of the Legendre table
    /// (0..=3) and `dp` factors of (i m) from the longitude dependence, with an
    /// optional l-dependent multiplier applied uniformly (1.0 for none).
    fn synthesize_with(&self, coeffs: &[Vec<Complex<f64>>], dt: usize, dp: usize, _scale: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.grid_len()];
        for i in 0..self.n_theta {
            let table = match dt {
                0 => &self.p[i],
                1 => &self.p_t[i],
                2 => &self.p_tt[i],
                3 => &self.p_ttt[i],
                _ => unreachable!(),
            };
            let mut ring = vec![Complex::new(0.0, 0.0); self.n_phi];
            for (l, row) in coeffs.iter().enumerate() {
                for (k, &a) in row.iter().enumerate() {
                    let m = k as isize - l as isize;
                    let ma = m.unsigned_abs();
                    let col = if m >= 0 { m as usize } else { self.n_phi - ma };
                    let im = Complex::new(0.0, m as f64).powu(dp as u32);
                    ring[col] += a * table[plm_index(l, ma)] * im;
                }
            }
            let vals = self.fourier.synthesize(&ring);
            out[i * self.n_phi..(i + 1) * self.n_phi].copy_from_slice(&vals);
        }
        out
    }

    /// Apply an l-dependent spectral multiplier.
    pub fn apply_l_multiplier(&self, f: &[f64], mult: impl Fn(usize) -> f64) -> Vec<f64> {
        let mut coeffs = self.analyze(f);
        for (l, row) in coeffs.iter_mut().enumerate() {
            let s = mult(l);
            for a in row.iter_mut() {
                *a *= s;
            }
        }
        self.synthesize(&coeffs)
    }

    /// Laplace-Beltrami operator, eigenvalue -l(l+1)/R^2.
    pub fn laplacian(&self, f: &[f64]) -> Vec<f64> {
        let r2 = self.radius * self.radius;
        self.apply_l_multiplier(f, |l| -((l * (l + 1)) as f64) / r2)
    }

    /// All partial derivatives up to third order.
    pub fn partials(&self, f: &[f64]) -> SpherePartials {
        let c = self.analyze(f);
        SpherePartials {
            f: f.to_vec(),
            ft: self.synthesize_with(&c, 1, 0, 1.0),
            fp: self.synthesize_with(&c, 0, 1, 1.0),
            ftt: self.synthesize_with(&c, 2, 0, 1.0),
            ftp: self.synthesize_with(&c, 1, 1, 1.0),
            fpp: self.synthesize_with(&c, 0, 2, 1.0),
            fttt: self.synthesize_with(&c, 3, 0, 1.0),
            fttp: self.synthesize_with(&c, 2, 1, 1.0),
            ftpp: self.synthesize_with(&c, 1, 2, 1.0),
            fppp: self.synthesize_with(&c, 0, 3, 1.0),
        }
    }

    /// Residual of analyze-then-synthesize; large values indicate aliasing
    /// (spectral content beyond lmax).
    pub fn band_limit_residual(&self, f: &[f64]) -> f64 {
        let back = self.synthesize(&self.analyze(f));
        f.iter()
            .zip(&back)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Sample the real spherical harmonic of degree l, order m (m >= 0 cosine
    /// branch, m < 0 sine branch), unit L^2(sphere of radius R)... normalized
    /// on the unit sphere measure.
    pub fn sample_harmonic(&self, l: usize, m: isize) -> Vec<f64> {
        assert!(l <= self.lmax && m.unsigned_abs() <= l);
        let ma = m.unsigned_abs();
        let mut out = vec![0.0; self.grid_len()];
        let sqrt2 = std::f64::consts::SQRT_2;
        for i in 0..self.n_theta {
            let pv = self.p[i][plm_index(l, ma)];
            for j in 0..self.n_phi {
                let phi = self.phi(j);
                out[i * self.n_phi + j] = if m == 0 {
                    pv
                } else if m > 0 {
                    sqrt2 * pv * (ma as f64 * phi).cos()
                } else {
                    sqrt2 * pv * (ma as f64 * phi).sin()
                };
            }
        }
        out
    }
}

/// Normalized associated Legendre values and theta-derivatives up to third
/// order at colatitude `theta`, packed by `plm_index`.
pub(crate) fn legendre_tables(lmax: usize, theta: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = plm_index(lmax, lmax) + 1;
    let x = theta.cos();
    let s = theta.sin();
    let cot = x / s;
    let mut p = vec![0.0; n];
    // P bar_00 = sqrt(1/4pi)
    p[0] = (1.0 / (4.0 * std::f64::consts::PI)).sqrt();
    for m in 1..=lmax {
        p[plm_index(m, m)] =
            -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s * p[plm_index(m - 1, m - 1)];
    }
    for m in 0..lmax {
        p[plm_index(m + 1, m)] = ((2 * m + 3) as f64).sqrt() * x * p[plm_index(m, m)];
    }
    for m in 0..=lmax {
        for l in (m + 2)..=lmax {
            let lf = l as f64;
            let mf = m as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((2.0 * lf + 1.0) * ((lf - 1.0).powi(2) - mf * mf))
                / ((2.0 * lf - 3.0) * (lf * lf - mf * mf)))
                .sqrt();
            p[plm_index(l, m)] = a * x * p[plm_index(l - 1, m)] - b * p[plm_index(l - 2, m)];
        }
    }
    // First theta-derivative: d P_lm / d theta = l cot(t) P_lm - c_lm P_{l-1,m} / sin(t).
    let mut pt = vec![0.0; n];
    for m in 0..=lmax {
        for l in m..=lmax {
            let lf = l as f64;
            let mf = m as f64;
            let mut d = lf * cot * p[plm_index(l, m)];
            if l > m {
                let c = ((lf * lf - mf * mf) * (2.0 * lf + 1.0) / (2.0 * lf - 1.0)).sqrt();
                d -= c * p[plm_index(l - 1, m)] / s;
            }
            pt[plm_index(l, m)] = d;
        }
    }
    // Higher derivatives from the Legendre ODE:
    //   P'' = -cot P' - (l(l+1) - m^2/sin^2) P
    let mut ptt = vec![0.0; n];
    let mut pttt = vec![0.0; n];
    for m in 0..=lmax {
        for l in m..=lmax {
            let idx = plm_index(l, m);
            let ll = (l * (l + 1)) as f64;
            let m2 = (m * m) as f64;
            let q = ll - m2 / (s * s);
            ptt[idx] = -cot * pt[idx] - q * p[idx];
            // differentiate: P''' = (1/sin^2) P' - cot P'' - q P' - (2 m^2 cos / sin^3) P
            pttt[idx] = pt[idx] / (s * s) - cot * ptt[idx] - q * pt[idx]
                - 2.0 * m2 * x / (s * s * s) * p[idx];
        }
    }
    (p, pt, ptt, pttt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonics_are_orthonormal_under_quadrature() {
        let sh = SphereHarmonics::new(1.0, 8);
        let y22 = sh.sample_harmonic(2, 2);
        let y31 = sh.sample_harmonic(3, 1);
        let norm: f64 = sh.integrate(&y22.iter().map(|v| v * v).collect::<Vec<_>>());
        let cross: f64 = sh.integrate(&y22.iter().zip(&y31).map(|(a, b)| a * b).collect::<Vec<_>>());
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(cross.abs() < 1e-12);
    }

    #[test]
    fn laplacian_eigenvalues() {
        for radius in [1.0, 2.0] {
            let sh = SphereHarmonics::new(radius, 10);
            for (l, m) in [(1usize, 0isize), (2, 1), (5, -3), (8, 8)] {
                let y = sh.sample_harmonic(l, m);
                let lap = sh.laplacian(&y);
                let expect = -((l * (l + 1)) as f64) / (radius * radius);
                for (a, b) in lap.iter().zip(&y) {
                    assert!((a - expect * b).abs() < 1e-9, "l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn round_trip_band_limited() {
        let sh = SphereHarmonics::new(1.0, 12);
        let f: Vec<f64> = sh
            .sample_harmonic(4, 2)
            .iter()
            .zip(sh.sample_harmonic(7, -5))
            .map(|(a, b)| 0.7 * a + 0.2 * b)
            .collect();
        assert!(sh.band_limit_residual(&f) < 1e-11);
    }

    #[test]
    fn theta_derivative_matches_finite_difference() {
        let lmax = 8;
        let t0 = 1.1;
        let h = 1e-5;
        let (p0, pt, ptt, pttt) = legendre_tables(lmax, t0);
        let (pm, ptm, pttm, _) = legendre_tables(lmax, t0 - h);
        let (pp, ptp, pttp, _) = legendre_tables(lmax, t0 + h);
        for idx in 0..p0.len() {
            let fd1 = (pp[idx] - pm[idx]) / (2.0 * h);
            let fd2 = (ptp[idx] - ptm[idx]) / (2.0 * h);
            let fd3 = (pttp[idx] - pttm[idx]) / (2.0 * h);
            assert!((fd1 - pt[idx]).abs() < 1e-6 * (1.0 + pt[idx].abs()));
            assert!((fd2 - ptt[idx]).abs() < 1e-5 * (1.0 + ptt[idx].abs()));
            assert!((fd3 - pttt[idx]).abs() < 1e-4 * (1.0 + pttt[idx].abs()));
        }
    }
}
