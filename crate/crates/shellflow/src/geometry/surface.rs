//! Analytic reference surfaces: flat periodic channel top, sphere, torus.
//!
//! Sign convention: the normal ν is oriented so that both principal
//! curvatures of the sphere are +1/R (displacement η > 0 moves toward the
//! degeneracy at distance κ). The audit for this convention is the product
//! identity γ(η) = (1 − h₁η)(1 − h₂η).

use crate::error::{Error, Result};
use crate::fourier::Fourier1D;
use crate::sphere::SphereHarmonics;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceKind {
    /// 1-D periodic shell at the top of a 2-D channel [0, length) x [0, height].
    FlatPeriodicTop { length: f64, height: f64 },
    Sphere { radius: f64 },
    Torus { major: f64, minor: f64 },
}

/// Pointwise fundamental forms and curvature scalars.
///
/// Tensors are stored in the surface coordinate basis; `weingarten` and `k`
/// are the mixed tensors h^α_β and (h∘h)^α_β. The flat kind uses a single
/// coordinate with trivial second slot.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureData {
    pub g: [[f64; 2]; 2],
    pub h: [[f64; 2]; 2],
    pub weingarten: [[f64; 2]; 2],
    pub k: [[f64; 2]; 2],
    pub mean: f64,
    pub gauss: f64,
    pub h1: f64,
    pub h2: f64,
}

impl CurvatureData {
    fn flat() -> Self {
        CurvatureData {
            g: [[1.0, 0.0], [0.0, 1.0]],
            h: [[0.0; 2]; 2],
            weingarten: [[0.0; 2]; 2],
            k: [[0.0; 2]; 2],
            mean: 0.0,
            gauss: 0.0,
            h1: 0.0,
            h2: 0.0,
        }
    }

    /// Diagonal forms from principal curvatures and metric diagonal entries.
    fn diagonal(g1: f64, g2: f64, h1: f64, h2: f64) -> Self {
        CurvatureData {
            g: [[g1, 0.0], [0.0, g2]],
            h: [[h1 * g1, 0.0], [0.0, h2 * g2]],
            weingarten: [[h1, 0.0], [0.0, h2]],
            k: [[h1 * h1, 0.0], [0.0, h2 * h2]],
            mean: 0.5 * (h1 + h2),
            gauss: h1 * h2,
            h1,
            h2,
        }
    }
}

/// Local area distortion γ(η) = 1 − 2Hη + Gη² = (1−h₁η)(1−h₂η).
pub fn gamma(mean: f64, gauss: f64, eta: f64) -> f64 {
    1.0 - 2.0 * mean * eta + gauss * eta * eta
}

/// Scalar shell state: normal displacement and velocity on the shell grid.
#[derive(Debug, Clone)]
pub struct ShellDisplacement {
    pub values: Vec<f64>,
    pub velocity: Vec<f64>,
    pub time: f64,
}

impl ShellDisplacement {
    pub fn zero(n: usize) -> Self {
        ShellDisplacement {
            values: vec![0.0; n],
            velocity: vec![0.0; n],
            time: 0.0,
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |a, &v| a.max(v.abs()))
    }
}

/// A reference surface with its parameter grid, curvature tables and tube
/// radius. Spectral transform engines are owned here so every module applies
/// identical discrete operators.
pub struct SurfaceGeometry {
    pub kind: SurfaceKind,
    pub n_u: usize,
    pub n_v: usize,
    pub kappa: f64,
    curv: Vec<CurvatureData>,
    fourier: Option<Fourier1D>,
    harmonics: Option<SphereHarmonics>,
}

impl SurfaceGeometry {
    pub fn flat(length: f64, height: f64, n_x: usize) -> Self {
        assert!(length > 0.0 && height > 0.0 && n_x >= 4);
        SurfaceGeometry {
            kind: SurfaceKind::FlatPeriodicTop { length, height },
            n_u: n_x,
            n_v: 1,
            kappa: height,
            curv: vec![CurvatureData::flat(); n_x],
            fourier: Some(Fourier1D::new(n_x, length)),
            harmonics: None,
        }
    }

    pub fn sphere(radius: f64, lmax: usize) -> Self {
        assert!(radius > 0.0);
        let sh = SphereHarmonics::new(radius, lmax);
        let mut curv = Vec::with_capacity(sh.grid_len());
        let h = 1.0 / radius;
        for i in 0..sh.n_theta {
            let s = sh.theta[i].sin();
            for _ in 0..sh.n_phi {
                curv.push(CurvatureData::diagonal(
                    radius * radius,
                    radius * radius * s * s,
                    h,
                    h,
                ));
            }
        }
        SurfaceGeometry {
            kind: SurfaceKind::Sphere { radius },
            n_u: sh.n_theta,
            n_v: sh.n_phi,
            kappa: radius,
            curv,
            fourier: None,
            harmonics: Some(sh),
        }
    }

    pub fn torus(major: f64, minor: f64, n_u: usize, n_v: usize) -> Self {
        assert!(major > minor && minor > 0.0 && n_u >= 8 && n_v >= 8);
        let tau = 2.0 * std::f64::consts::PI;
        let mut curv = Vec::with_capacity(n_u * n_v);
        for iu in 0..n_u {
            let _u = tau * iu as f64 / n_u as f64;
            for iv in 0..n_v {
                let v = tau * iv as f64 / n_v as f64;
                let ring = major + minor * v.cos();
                // Principal curvatures in the pinned orientation: tube
                // direction 1/minor, ring direction cos(v)/ring.
                curv.push(CurvatureData::diagonal(
                    ring * ring,
                    minor * minor,
                    v.cos() / ring,
                    1.0 / minor,
                ));
            }
        }
        let kappa = torus_tube_radius(major, minor, &curv);
        SurfaceGeometry {
            kind: SurfaceKind::Torus { major, minor },
            n_u,
            n_v,
            kappa,
            curv,
            fourier: None,
            harmonics: None,
        }
    }

    pub fn grid_len(&self) -> usize {
        self.n_u * self.n_v
    }

    /// Parameter coordinates of grid point `idx` (row-major u, then v).
    pub fn param(&self, idx: usize) -> (f64, f64) {
        let tau = 2.0 * std::f64::consts::PI;
        match self.kind {
            SurfaceKind::FlatPeriodicTop { length, .. } => {
                (length * idx as f64 / self.n_u as f64, 0.0)
            }
            SurfaceKind::Sphere { .. } => {
                let sh = self.harmonics.as_ref().unwrap();
                (sh.theta[idx / self.n_v], sh.phi(idx % self.n_v))
            }
            SurfaceKind::Torus { .. } => (
                tau * (idx / self.n_v) as f64 / self.n_u as f64,
                tau * (idx % self.n_v) as f64 / self.n_v as f64,
            ),
        }
    }

    pub fn curvature(&self, idx: usize) -> &CurvatureData {
        &self.curv[idx]
    }

    /// Quadrature weight of the reference area element at grid point `idx`.
    pub fn area_weight(&self, idx: usize) -> f64 {
        let tau = 2.0 * std::f64::consts::PI;
        match self.kind {
            SurfaceKind::FlatPeriodicTop { length, .. } => length / self.n_u as f64,
            SurfaceKind::Sphere { .. } => self.harmonics.as_ref().unwrap().area_weight(idx / self.n_v),
            SurfaceKind::Torus { major, minor } => {
                let v = tau * (idx % self.n_v) as f64 / self.n_v as f64;
                (major + minor * v.cos()) * minor * (tau / self.n_u as f64)
                    * (tau / self.n_v as f64)
            }
        }
    }

    /// Surface integral of a sampled field over the reference surface.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.grid_len());
        f.iter()
            .enumerate()
            .map(|(i, &v)| v * self.area_weight(i))
            .sum()
    }

    pub fn fourier(&self) -> Option<&Fourier1D> {
        self.fourier.as_ref()
    }

    pub fn harmonics(&self) -> Option<&SphereHarmonics> {
        self.harmonics.as_ref()
    }

    /// γ(η) sampled on the grid.
    pub fn gamma_field(&self, eta: &[f64]) -> Vec<f64> {
        assert_eq!(eta.len(), self.grid_len());
        eta.iter()
            .zip(&self.curv)
            .map(|(&e, c)| gamma(c.mean, c.gauss, e))
            .collect()
    }

    /// Check the tube constraint for a displacement field.
    pub fn validate_displacement(&self, eta: &[f64]) -> Result<()> {
        let sup = eta.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        if sup >= self.kappa {
            return Err(Error::InvalidDisplacement(format!(
                "sup|eta| = {sup:.6} >= kappa = {:.6}",
                self.kappa
            )));
        }
        Ok(())
    }

    /// Coordinate gradient (∂_u f, ∂_v f) per grid point.
    pub fn gradient(&self, f: &[f64]) -> Result<Vec<[f64; 2]>> {
        match self.kind {
            SurfaceKind::FlatPeriodicTop { .. } => {
                let d = self.fourier.as_ref().unwrap().derivative(f, 1);
                Ok(d.iter().map(|&v| [v, 0.0]).collect())
            }
            SurfaceKind::Sphere { .. } => {
                let sh = self.harmonics.as_ref().unwrap();
                let p = sh.partials(f);
                Ok(p.ft.iter().zip(&p.fp).map(|(&a, &b)| [a, b]).collect())
            }
            SurfaceKind::Torus { .. } => Err(Error::InvalidParameters(
                "spectral operators are not implemented for the torus".into(),
            )),
        }
    }

    /// Covariant Hessian ∇²f in coordinate components (symmetric 2x2 per
    /// point; the flat kind fills only the first slot).
    pub fn hessian(&self, f: &[f64]) -> Result<Vec<[[f64; 2]; 2]>> {
        match self.kind {
            SurfaceKind::FlatPeriodicTop { .. } => {
                let d2 = self.fourier.as_ref().unwrap().derivative(f, 2);
                Ok(d2.iter().map(|&v| [[v, 0.0], [0.0, 0.0]]).collect())
            }
            SurfaceKind::Sphere { .. } => {
                let sh = self.harmonics.as_ref().unwrap();
                let p = sh.partials(f);
                let mut out = Vec::with_capacity(self.grid_len());
                for idx in 0..self.grid_len() {
                    let (theta, _) = self.param(idx);
                    let s = theta.sin();
                    let c = theta.cos();
                    let cot = c / s;
                    let tt = p.ftt[idx];
                    let tp = p.ftp[idx] - cot * p.fp[idx];
                    let pp = p.fpp[idx] + s * c * p.ft[idx];
                    out.push([[tt, tp], [tp, pp]]);
                }
                Ok(out)
            }
            SurfaceKind::Torus { .. } => Err(Error::InvalidParameters(
                "spectral operators are not implemented for the torus".into(),
            )),
        }
    }

    /// Laplace-Beltrami operator.
    pub fn laplacian(&self, f: &[f64]) -> Result<Vec<f64>> {
        match self.kind {
            SurfaceKind::FlatPeriodicTop { .. } => {
                Ok(self.fourier.as_ref().unwrap().derivative(f, 2))
            }
            SurfaceKind::Sphere { .. } => Ok(self.harmonics.as_ref().unwrap().laplacian(f)),
            SurfaceKind::Torus { .. } => Err(Error::InvalidParameters(
                "spectral operators are not implemented for the torus".into(),
            )),
        }
    }

    /// Max-norm residual of the analyze/synthesize round trip; large values
    /// flag unresolved spectral content.
    pub fn aliasing_residual(&self, f: &[f64]) -> f64 {
        match self.kind {
            SurfaceKind::Sphere { .. } => self.harmonics.as_ref().unwrap().band_limit_residual(f),
            _ => 0.0,
        }
    }
}

/// Two-sided tube radius of the torus: minimum of the principal curvature
/// radii and a nearest-approach search over the offset surface (point pairs
/// scored by the osculating-sphere radius |p−q|² / 2|(p−q)·ν_q|).
fn torus_tube_radius(major: f64, minor: f64, curv: &[CurvatureData]) -> f64 {
    let curvature_bound = curv
        .iter()
        .flat_map(|c| [c.h1.abs(), c.h2.abs()])
        .fold(0.0f64, f64::max)
        .recip();

    let n = 96usize;
    let tau = 2.0 * std::f64::consts::PI;
    let mut pts = Vec::with_capacity(n * n / 2);
    for iu in 0..n {
        let u = tau * iu as f64 / n as f64;
        for iv in 0..n {
            let v = tau * iv as f64 / n as f64;
            let ring = major + minor * v.cos();
            let p = [ring * u.cos(), ring * u.sin(), minor * v.sin()];
            let nu = [v.cos() * u.cos(), v.cos() * u.sin(), v.sin()];
            pts.push((p, nu));
        }
    }
    let mut reach = f64::INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = [
                pts[i].0[0] - pts[j].0[0],
                pts[i].0[1] - pts[j].0[1],
                pts[i].0[2] - pts[j].0[2],
            ];
            let d2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
            let dn = (d[0] * pts[j].1[0] + d[1] * pts[j].1[1] + d[2] * pts[j].1[2]).abs();
            if dn > 1e-12 {
                reach = reach.min(0.5 * d2 / dn);
            }
        }
    }
    curvature_bound.min(reach)
}

/// Area-distortion vector field v_η of Φ_η with its normal component,
/// reported per grid point as (Cartesian components, ν·v_η, |v_η|).
pub struct AreaDistortion {
    pub v: Vec<[f64; 3]>,
    pub normal_component: Vec<f64>,
    pub magnitude: Vec<f64>,
}

pub fn area_distortion_normal(geom: &SurfaceGeometry, eta: &[f64]) -> Result<AreaDistortion> {
    geom.validate_displacement(eta)?;
    match geom.kind {
        SurfaceKind::FlatPeriodicTop { .. } => {
            let dx = geom.fourier().unwrap().derivative(eta, 1);
            let mut v = Vec::with_capacity(eta.len());
            let mut nc = Vec::with_capacity(eta.len());
            let mut mag = Vec::with_capacity(eta.len());
            for &d in &dx {
                v.push([-d, 1.0, 0.0]);
                nc.push(1.0);
                mag.push((1.0 + d * d).sqrt());
            }
            Ok(AreaDistortion {
                v,
                normal_component: nc,
                magnitude: mag,
            })
        }
        SurfaceKind::Sphere { radius } => {
            let sh = geom.harmonics().unwrap();
            let p = sh.partials(eta);
            let mut v = Vec::with_capacity(eta.len());
            let mut nc = Vec::with_capacity(eta.len());
            let mut mag = Vec::with_capacity(eta.len());
            for idx in 0..geom.grid_len() {
                let (theta, phi) = geom.param(idx);
                let (st, ct) = theta.sin_cos();
                let (sp, cp) = phi.sin_cos();
                let er = [st * cp, st * sp, ct];
                let et = [ct * cp, ct * sp, -st];
                let ep = [-sp, cp, 0.0];
                let a = radius - eta[idx];
                // d_theta Phi x d_phi Phi in the (er, et, ep) frame, for
                // Phi = (R - eta) er; then orient so eta = 0 gives v = nu.
                let cr = [a * a * st, p.ft[idx] * a * st, p.fp[idx] * a];
                let scale = -1.0 / (radius * radius * st);
                let vi = [
                    scale * (cr[0] * er[0] + cr[1] * et[0] + cr[2] * ep[0]),
                    scale * (cr[0] * er[1] + cr[1] * et[1] + cr[2] * ep[1]),
                    scale * (cr[0] * er[2] + cr[1] * et[2] + cr[2] * ep[2]),
                ];
                let nu = [-er[0], -er[1], -er[2]];
                nc.push(vi[0] * nu[0] + vi[1] * nu[1] + vi[2] * nu[2]);
                mag.push((vi[0] * vi[0] + vi[1] * vi[1] + vi[2] * vi[2]).sqrt());
                v.push(vi);
            }
            Ok(AreaDistortion {
                v,
                normal_component: nc,
                magnitude: mag,
            })
        }
        SurfaceKind::Torus { .. } => Err(Error::InvalidParameters(
            "area distortion field is not implemented for the torus".into(),
        )),
    }
}

/// Max-norm residual of [Δ,∇]f − (2H h − k)·∇f over the grid, measured in an
/// orthonormal tangent frame.
pub fn commutator_residual(geom: &SurfaceGeometry, f: &[f64]) -> Result<f64> {
    match geom.kind {
        SurfaceKind::FlatPeriodicTop { .. } => {
            let four = geom.fourier().unwrap();
            let a = four.derivative(&four.derivative(f, 1), 2);
            let b = four.derivative(&four.derivative(f, 2), 1);
            Ok(a.iter()
                .zip(&b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max))
        }
        SurfaceKind::Sphere { radius } => {
            let sh = geom.harmonics().unwrap();
            let p = sh.partials(f);
            let lap = sh.laplacian(f);
            let dl = sh.partials(&lap);
            let r2 = radius * radius;
            let mut worst = 0.0f64;
            for idx in 0..geom.grid_len() {
                let (theta, _) = geom.param(idx);
                let s = theta.sin();
                let c = theta.cos();
                let cot = c / s;
                // Covariant Hessian S and the needed third covariant
                // derivatives T_{μνα} in (θ, φ) coordinates; Christoffels
                // Γ^θ_{φφ} = −sin cos, Γ^φ_{θφ} = cot.
                let s_tt = p.ftt[idx];
                let s_tp = p.ftp[idx] - cot * p.fp[idx];
                let s_pp = p.fpp[idx] + s * c * p.ft[idx];
                let t_ttt = p.fttt[idx];
                let t_ttp = p.fttp[idx] + p.fp[idx] / (s * s) - cot * p.ftp[idx] - cot * s_tp;
                let t_ppt = p.ftpp[idx] - cot * p.fpp[idx] + s * c * s_tt - cot * s_pp;
                let t_ppp = p.fppp[idx] + s * c * p.ftp[idx] + 2.0 * s * c * s_tp;
                // Rough Laplacian of the differential, minus ∇Δf and the
                // curvature term (2Hh − k) = id/R² on the sphere.
                let res_t = (t_ttt + t_ppt / (s * s)) / r2 - dl.ft[idx] - p.ft[idx] / r2;
                let res_p = (t_ttp + t_ppp / (s * s)) / r2 - dl.fp[idx] - p.fp[idx] / r2;
                // Orthonormal frame components.
                worst = worst
                    .max((res_t / radius).abs())
                    .max((res_p / (radius * s)).abs());
            }
            Ok(worst)
        }
        SurfaceKind::Torus { .. } => Err(Error::InvalidParameters(
            "commutator residual is not implemented for the torus".into(),
        )),
    }
}
