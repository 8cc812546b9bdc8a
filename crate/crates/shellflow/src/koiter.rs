//! Linearly elastic shell energy restricted to normal displacements: the
//! quadratic form, its L² gradient, and the flat-plate reduction.

use crate::error::{Error, Result};
use crate::geometry::{SurfaceGeometry, SurfaceKind};

/// Material and thickness parameters of the shell.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct KoiterParams {
    /// Half-thickness scale.
    pub eps0: f64,
    pub lame_lambda: f64,
    pub lame_mu: f64,
    /// Surface mass density factor; the inertia scale is eps0 * rho_s.
    pub rho_s: f64,
}

impl Default for KoiterParams {
    fn default() -> Self {
        KoiterParams {
            eps0: 1.0,
            lame_lambda: 1.0,
            lame_mu: 1.0,
            rho_s: 1.0,
        }
    }
}

impl KoiterParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > 0.0) || !(self.lame_mu > 0.0) || self.lame_lambda < 0.0 {
            return Err(Error::InvalidParameters(format!(
                "need eps0 > 0, mu > 0, lambda >= 0 (got eps0={}, lambda={}, mu={})",
                self.eps0, self.lame_lambda, self.lame_mu
            )));
        }
        if !(self.rho_s > 0.0) {
            return Err(Error::InvalidParameters("rho_s must be positive".into()));
        }
        Ok(())
    }

    /// Inertia scale eps0 * rho_s multiplying the shell acceleration.
    pub fn inertia(&self) -> f64 {
        self.eps0 * self.rho_s
    }
}

/// Plate (pure bending) coefficient c_B = eps0^3 * 8 mu (lambda + mu) / (3 (lambda + 2 mu)).
pub fn plate_coefficient(params: &KoiterParams) -> Result<f64> {
    let denom = params.lame_lambda + 2.0 * params.lame_mu;
    if denom == 0.0 {
        return Err(Error::InvalidParameters(
            "lambda + 2 mu must be nonzero".into(),
        ));
    }
    Ok(params.eps0.powi(3) * 8.0 * params.lame_mu * (params.lame_lambda + params.lame_mu)
        / (3.0 * denom))
}

/// Strain tensors of a normal displacement: membrane part σ = −h η and
/// bending part ξ = ∇²η − k η, in covariant coordinate components.
pub struct KoiterForms {
    pub sigma: Vec<[[f64; 2]; 2]>,
    pub xi: Vec<[[f64; 2]; 2]>,
}

pub fn koiter_forms(geom: &SurfaceGeometry, eta: &[f64]) -> Result<KoiterForms> {
    let hess = geom.hessian(eta)?;
    let mut sigma = Vec::with_capacity(eta.len());
    let mut xi = Vec::with_capacity(eta.len());
    for (idx, (&e, hs)) in eta.iter().zip(&hess).enumerate() {
        let c = geom.curvature(idx);
        // covariant k = weingarten-squared lowered with the metric
        let k_cov = [
            [c.k[0][0] * c.g[0][0], c.k[0][0] * c.g[0][1]],
            [c.k[1][1] * c.g[1][0], c.k[1][1] * c.g[1][1]],
        ];
        sigma.push([
            [-c.h[0][0] * e, -c.h[0][1] * e],
            [-c.h[1][0] * e, -c.h[1][1] * e],
        ]);
        xi.push([
            [hs[0][0] - k_cov[0][0] * e, hs[0][1] - k_cov[0][1] * e],
            [hs[1][0] - k_cov[1][0] * e, hs[1][1] - k_cov[1][1] * e],
        ]);
    }
    Ok(KoiterForms { sigma, xi })
}

/// |h|², |k|² and the metric contraction ⟨a, b⟩ for symmetric covariant
/// 2-tensors with a diagonal metric (all supported kinds).
fn tensor_norms(geom: &SurfaceGeometry, idx: usize) -> (f64, f64) {
    let c = geom.curvature(idx);
    (
        c.h1 * c.h1 + c.h2 * c.h2,
        c.h1.powi(4) + c.h2.powi(4),
    )
}

fn contract(geom: &SurfaceGeometry, idx: usize, a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> f64 {
    let g = geom.curvature(idx).g;
    match geom.kind {
        SurfaceKind::FlatPeriodicTop { .. } => a[0][0] * b[0][0],
        _ => {
            let (g1, g2) = (g[0][0], g[1][1]);
            a[0][0] * b[0][0] / (g1 * g1)
                + 2.0 * a[0][1] * b[0][1] / (g1 * g2)
                + a[1][1] * b[1][1] / (g2 * g2)
        }
    }
}

fn trace(geom: &SurfaceGeometry, idx: usize, a: &[[f64; 2]; 2]) -> f64 {
    let g = geom.curvature(idx).g;
    match geom.kind {
        SurfaceKind::FlatPeriodicTop { .. } => a[0][0],
        _ => a[0][0] / g[0][0] + a[1][1] / g[1][1],
    }
}

/// The shell bilinear form K(η, ζ): membrane term plus the two bending
/// terms (trace part and full Hessian part), assembled pointwise from the
/// curvature tables and integrated over the reference surface.
pub fn koiter_bilinear(
    geom: &SurfaceGeometry,
    params: &KoiterParams,
    eta: &[f64],
    zeta: &[f64],
) -> Result<f64> {
    Ok(koiter_breakdown(geom, params, eta, zeta)?.total())
}

/// Energy component breakdown of K(η, ζ).
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct KoiterBreakdown {
    pub membrane: f64,
    pub bending_trace: f64,
    pub bending_full: f64,
}

impl KoiterBreakdown {
    pub fn total(&self) -> f64 {
        self.membrane + self.bending_trace + self.bending_full
    }
}

pub fn koiter_breakdown(
    geom: &SurfaceGeometry,
    params: &KoiterParams,
    eta: &[f64],
    zeta: &[f64],
) -> Result<KoiterBreakdown> {
    params.validate()?;
    let (lam, mu, e0) = (params.lame_lambda, params.lame_mu, params.eps0);
    let c_lam = 4.0 * lam * mu / (lam + 2.0 * mu);
    let hess_e = geom.hessian(eta)?;
    let hess_z = geom.hessian(zeta)?;
    let lap_e = geom.laplacian(eta)?;
    let lap_z = geom.laplacian(zeta)?;
    let bend = e0.powi(3) / 3.0;
    let (mut membrane, mut b_trace, mut b_full) = (0.0, 0.0, 0.0);
    for idx in 0..geom.grid_len() {
        let c = geom.curvature(idx);
        let (h2, k2) = tensor_norms(geom, idx);
        let w = 0.5 * geom.area_weight(idx);
        let (e, z) = (eta[idx], zeta[idx]);
        membrane += w * e0 * e * z * (4.0 * c_lam * c.mean * c.mean + 4.0 * mu * h2);
        b_trace += w
            * bend
            * c_lam
            * (lap_e[idx] * lap_z[idx] - h2 * (z * lap_e[idx] + e * lap_z[idx]) - e * z * h2 * h2);
        // ⟨∇²η, k⟩ with k proportional to the Weingarten square
        let k_cov = [
            [c.k[0][0] * c.g[0][0], 0.0],
            [0.0, c.k[1][1] * c.g[1][1]],
        ];
        let he_k = contract(geom, idx, &hess_e[idx], &k_cov);
        let hz_k = contract(geom, idx, &hess_z[idx], &k_cov);
        b_full += w
            * bend
            * 4.0
            * mu
            * (contract(geom, idx, &hess_e[idx], &hess_z[idx]) - z * he_k - e * hz_k - e * z * k2);
    }
    Ok(KoiterBreakdown {
        membrane,
        bending_trace: b_trace,
        bending_full: b_full,
    })
}

/// L² gradient of the energy: the fourth-order operator whose pairing with ζ
/// equals 2K(η, ζ). Assembled through an independent route (spectral powers
/// of Δ plus the first-order curvature corrections) so that the duality test
/// exercises each integration by parts.
pub fn koiter_gradient(
    geom: &SurfaceGeometry,
    params: &KoiterParams,
    eta: &[f64],
) -> Result<Vec<f64>> {
    params.validate()?;
    let (lam, mu, e0) = (params.lame_lambda, params.lame_mu, params.eps0);
    let c_lam = 4.0 * lam * mu / (lam + 2.0 * mu);
    let bend = e0.powi(3) / 3.0;
    match geom.kind {
        SurfaceKind::FlatPeriodicTop { .. } => {
            // h = 0: the whole operator collapses to c_B Δ².
            let c_b = plate_coefficient(params)?;
            let four = geom.fourier().unwrap();
            Ok(four
                .derivative(eta, 4)
                .into_iter()
                .map(|v| c_b * v)
                .collect())
        }
        SurfaceKind::Sphere { radius } => {
            // On the sphere h, k are constant multiples of the metric, so the
            // divergence-form terms reduce exactly to Laplacian multiples:
            //   ∇*[Δ,∇]η = (1/R²)Δη,  (∇*)²(kη) = (1/R²)Δη,  Δ(|h|²η) = |h|²Δη.
            let lap = geom.laplacian(eta)?;
            let bilap = geom.laplacian(&lap)?;
            let hess = geom.hessian(eta)?;
            let r2 = radius * radius;
            let mut out = vec![0.0; eta.len()];
            for idx in 0..eta.len() {
                let c = geom.curvature(idx);
                let (h2, k2) = tensor_norms(geom, idx);
                let k_cov = [
                    [c.k[0][0] * c.g[0][0], 0.0],
                    [0.0, c.k[1][1] * c.g[1][1]],
                ];
                let hess_k = contract(geom, idx, &hess[idx], &k_cov);
                let comm = (2.0 * c.mean * c.h1 - c.k[0][0]) * lap[idx]; // = Δη/R²
                debug_assert!((comm - lap[idx] / r2).abs() <= 1e-12 * (1.0 + lap[idx].abs()));
                let membrane =
                    e0 * (4.0 * c_lam * c.mean * c.mean + 4.0 * mu * h2) * eta[idx];
                let part_lam = bend
                    * c_lam
                    * (bilap[idx] - 2.0 * h2 * lap[idx] - h2 * h2 * eta[idx]);
                let part_mu = bend
                    * 4.0
                    * mu
                    * (bilap[idx] + comm - hess_k - lap[idx] / r2 - k2 * eta[idx]);
                out[idx] = membrane + part_lam + part_mu;
            }
            Ok(out)
        }
        SurfaceKind::Torus { .. } => Err(Error::InvalidParameters(
            "shell operators are not implemented for the torus".into(),
        )),
    }
}

/// 2 K(η + ε ∂_tη, b): the damped elastic pairing entering the momentum
/// balance; ε = 0 recovers the undamped form.
pub fn damped_shell_form(
    geom: &SurfaceGeometry,
    params: &KoiterParams,
    eta: &[f64],
    eta_t: &[f64],
    b: &[f64],
    eps_damp: f64,
) -> Result<f64> {
    if eps_damp < 0.0 {
        return Err(Error::InvalidParameters("eps_damp must be >= 0".into()));
    }
    let combined: Vec<f64> = eta
        .iter()
        .zip(eta_t)
        .map(|(&e, &et)| e + eps_damp * et)
        .collect();
    Ok(2.0 * koiter_bilinear(geom, params, &combined, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn flat(n: usize) -> SurfaceGeometry {
        SurfaceGeometry::flat(2.0 * PI, 1.0, n)
    }

    fn sample_flat(n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..n).map(|i| f(2.0 * PI * i as f64 / n as f64)).collect()
    }

    fn random_sphere_field(geom: &SurfaceGeometry, lmax: usize, rng: &mut StdRng) -> Vec<f64> {
        let sh = geom.harmonics().unwrap();
        let mut f = vec![0.0; geom.grid_len()];
        for l in 0..=lmax {
            for m in -(l as isize)..=(l as isize) {
                let a: f64 = rng.gen_range(-1.0..1.0);
                for (v, y) in f.iter_mut().zip(sh.sample_harmonic(l, m)) {
                    *v += a * y;
                }
            }
        }
        f
    }

    #[test]
    fn plate_coefficient_values_and_identity() {
        let p = KoiterParams::default();
        assert!((plate_coefficient(&p).unwrap() - 16.0 / 9.0).abs() < 1e-14);
        let p0 = KoiterParams {
            lame_lambda: 0.0,
            ..p
        };
        assert!((plate_coefficient(&p0).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let lam: f64 = rng.gen_range(0.0..5.0);
            let mu: f64 = rng.gen_range(0.1..5.0);
            let a = 4.0 * lam * mu / (lam + 2.0 * mu) + 4.0 * mu;
            let b = 8.0 * mu * (lam + mu) / (lam + 2.0 * mu);
            assert!((a - b).abs() < 1e-12 * b);
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        let bad = KoiterParams {
            lame_mu: 0.0,
            ..KoiterParams::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn forms_flat_and_sphere() {
        let geom = flat(32);
        let eta = sample_flat(32, f64::sin);
        let f = koiter_forms(&geom, &eta).unwrap();
        for (i, s) in f.sigma.iter().enumerate() {
            assert_eq!(s[0][0], 0.0);
            assert!((f.xi[i][0][0] + eta[i]).abs() < 1e-10); // xi = eta'' = -sin x
        }

        let sph = SurfaceGeometry::sphere(1.0, 8);
        let c0 = 0.3;
        let eta = vec![c0; sph.grid_len()];
        let f = koiter_forms(&sph, &eta).unwrap();
        for idx in 0..sph.grid_len() {
            let c = sph.curvature(idx);
            for a in 0..2 {
                assert!((f.sigma[idx][a][a] + c.h[a][a] * c0).abs() < 1e-12);
                // ∇²const = 0, so xi = -c0 * k (covariant)
                let k_cov = c.k[a][a] * c.g[a][a];
                assert!((f.xi[idx][a][a] + c0 * k_cov).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn bilinear_flat_oracle() {
        let geom = flat(64);
        let p = KoiterParams::default();
        let eta = sample_flat(64, f64::sin);
        let zeta = sample_flat(64, |x| (2.0 * x).cos());
        assert_eq!(
            koiter_bilinear(&geom, &p, &vec![0.0; 64], &zeta).unwrap(),
            0.0
        );
        let k = koiter_bilinear(&geom, &p, &eta, &eta).unwrap();
        assert!((k - 8.0 * PI / 9.0).abs() < 1e-10, "K = {k}");
        // symmetry
        let kab = koiter_bilinear(&geom, &p, &eta, &zeta).unwrap();
        let kba = koiter_bilinear(&geom, &p, &zeta, &eta).unwrap();
        assert!((kab - kba).abs() < 1e-12);
    }

    #[test]
    fn bilinear_nonnegative_random_fields() {
        let p = KoiterParams::default();
        let geom = flat(32);
        let sph = SurfaceGeometry::sphere(1.0, 10);
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..1000 {
            let eta: Vec<f64> = {
                let a: f64 = rng.gen_range(-1.0..1.0);
                let b: f64 = rng.gen_range(-1.0..1.0);
                let c: f64 = rng.gen_range(-1.0..1.0);
                sample_flat(32, |x| a * x.sin() + b * (3.0 * x).cos() + c)
            };
            assert!(koiter_bilinear(&geom, &p, &eta, &eta).unwrap() >= -1e-12);
        }
        for _ in 0..50 {
            let eta = random_sphere_field(&sph, 4, &mut rng);
            let k = koiter_bilinear(&sph, &p, &eta, &eta).unwrap();
            assert!(k >= -1e-12, "K = {k}");
        }
    }

    #[test]
    fn gradient_flat_mode_symbol() {
        let geom = flat(64);
        let p = KoiterParams::default();
        let eta = sample_flat(64, |x| (3.0 * x).sin());
        let g = koiter_gradient(&geom, &p, &eta).unwrap();
        for (gv, ev) in g.iter().zip(&eta) {
            assert!((gv - 16.0 / 9.0 * 81.0 * ev).abs() < 1e-9 * 144.0);
        }
        let zero = koiter_gradient(&geom, &p, &vec![0.0; 64]).unwrap();
        assert!(zero.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn duality_sphere_and_flat() {
        let p = KoiterParams {
            eps0: 0.8,
            lame_lambda: 1.3,
            lame_mu: 0.9,
            rho_s: 1.0,
        };
        let mut rng = StdRng::seed_from_u64(23);
        let sph = SurfaceGeometry::sphere(1.0, 16);
        for _ in 0..20 {
            let eta = random_sphere_field(&sph, 6, &mut rng);
            let zeta = random_sphere_field(&sph, 6, &mut rng);
            let grad = koiter_gradient(&sph, &p, &eta).unwrap();
            let pairing: f64 = (0..sph.grid_len())
                .map(|i| grad[i] * zeta[i] * sph.area_weight(i))
                .sum();
            let k2 = 2.0 * koiter_bilinear(&sph, &p, &eta, &zeta).unwrap();
            let scale = 1.0 + k2.abs() + pairing.abs();
            assert!(
                (pairing - k2).abs() <= 1e-8 * scale,
                "pairing {pairing} vs 2K {k2}"
            );
        }
        let geom = flat(64);
        for _ in 0..20 {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            let eta = sample_flat(64, |x| a * x.sin() + b * (4.0 * x).cos());
            let c: f64 = rng.gen_range(-1.0..1.0);
            let zeta = sample_flat(64, |x| c * (2.0 * x).sin());
            let grad = koiter_gradient(&geom, &p, &eta).unwrap();
            let pairing: f64 = (0..geom.grid_len())
                .map(|i| grad[i] * zeta[i] * geom.area_weight(i))
                .sum();
            let k2 = 2.0 * koiter_bilinear(&geom, &p, &eta, &zeta).unwrap();
            assert!((pairing - k2).abs() <= 1e-8 * (1.0 + k2.abs() + pairing.abs()));
        }
    }

    #[test]
    fn sphere_harmonic_energy_positive() {
        let sph = SurfaceGeometry::sphere(1.0, 8);
        let p = KoiterParams::default();
        let y2 = sph.harmonics().unwrap().sample_harmonic(2, 0);
        assert!(koiter_bilinear(&sph, &p, &y2, &y2).unwrap() > 0.0);
    }

    #[test]
    fn damped_form_examples() {
        let geom = flat(64);
        let p = KoiterParams::default();
        let eta = sample_flat(64, f64::sin);
        let b = sample_flat(64, f64::sin);
        let zero = vec![0.0; 64];
        // eps = 0 recovers 2K(eta, b)
        let undamped = damped_shell_form(&geom, &p, &eta, &zero, &b, 0.0).unwrap();
        assert!((undamped - 2.0 * koiter_bilinear(&geom, &p, &eta, &b).unwrap()).abs() < 1e-14);
        // eta = 0, b = eta_t: pure damping, nonnegative
        let d = damped_shell_form(&geom, &p, &zero, &b, &b, 0.5).unwrap();
        assert!(d >= 0.0);
        // bilinearity oracle: eta = eta_t = b = sin x, eps = 0.5
        let v = damped_shell_form(&geom, &p, &eta, &eta, &b, 0.5).unwrap();
        assert!((v - 8.0 * PI / 3.0).abs() < 1e-10, "v = {v}");
    }
}
