//! The cutoff profile β used by the boundary transformation.
//!
//! β maps [-1, 0] onto [0, 1] monotonically with β(-1) = 0, β(0) = 1 and a
//! derivative bound that keeps s ↦ s + η β(s/κ) strictly increasing for the
//! displacement range the run is built for.
//!
//! Because ∫β' = 1 over a unit interval, sup β' ≥ 1 is unavoidable; a bound
//! of 0.9·κ/η_max is therefore only attainable when η_max < 0.9κ. Below that
//! threshold we use a smoothstep (or a plateau profile tuned to the bound);
//! above it we fall back to the flattest smooth profile with plateau height
//! (1 + κ/η_max)/2, which still gives a strictly positive monotonicity
//! margin for every η_max < κ.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Profile {
    /// Quintic smoothstep, sup β' = 15/8.
    Quintic,
    /// Plateau of height `h` with smoothstep edges of width `w = 1 - 1/h`.
    Plateau { h: f64, w: f64 },
}

/// Dense-sampled cutoff profile with closed-form point evaluation.
#[derive(Debug, Clone)]
pub struct Cutoff {
    profile: Profile,
    /// β sampled on `n+1` uniform points of [-1, 0].
    pub samples: Vec<f64>,
    /// β' on the same points.
    pub deriv_samples: Vec<f64>,
}

const TABLE_LEN: usize = 2048;

pub fn build_cutoff(kappa: f64, eta_max: f64) -> Result<Cutoff> {
    if !(kappa > 0.0) || !(eta_max > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "kappa = {kappa}, eta_max = {eta_max} must be positive"
        )));
    }
    if eta_max >= kappa {
        return Err(Error::InvalidDisplacement(format!(
            "eta_max = {eta_max} >= kappa = {kappa}"
        )));
    }
    let m = kappa / eta_max;
    let target = 0.9 * m;
    let profile = if target >= 15.0 / 8.0 {
        Profile::Quintic
    } else {
        let h = if target > 1.05 { target } else { 0.5 * (1.0 + m) };
        Profile::Plateau { h, w: 1.0 - 1.0 / h }
    };
    let mut samples = Vec::with_capacity(TABLE_LEN + 1);
    let mut deriv_samples = Vec::with_capacity(TABLE_LEN + 1);
    for i in 0..=TABLE_LEN {
        let s = -1.0 + i as f64 / TABLE_LEN as f64;
        samples.push(eval_profile(profile, s));
        deriv_samples.push(deriv_profile(profile, s));
    }
    Ok(Cutoff {
        profile,
        samples,
        deriv_samples,
    })
}

impl Cutoff {
    /// β(s) for s in [-1, 0]; clamped to the flat continuations outside.
    pub fn eval(&self, s: f64) -> f64 {
        eval_profile(self.profile, s)
    }

    /// β'(s), zero outside [-1, 0].
    pub fn deriv(&self, s: f64) -> f64 {
        deriv_profile(self.profile, s)
    }

    pub fn sup_deriv(&self) -> f64 {
        match self.profile {
            Profile::Quintic => 15.0 / 8.0,
            Profile::Plateau { h, .. } => h,
        }
    }
}

fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

/// ∫₀ᵗ smoothstep = t³ - t⁴/2.
fn smoothstep_int(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (1.0 - 0.5 * t)
}

fn eval_profile(p: Profile, s: f64) -> f64 {
    if s <= -1.0 {
        return 0.0;
    }
    if s >= 0.0 {
        return 1.0;
    }
    match p {
        Profile::Quintic => {
            let t = s + 1.0;
            t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
        }
        Profile::Plateau { h, w } => {
            if s < -1.0 + w {
                h * w * smoothstep_int((s + 1.0) / w)
            } else if s <= -w {
                0.5 * h * w + h * (s + 1.0 - w)
            } else {
                1.0 - h * w * smoothstep_int(-s / w)
            }
        }
    }
}

fn deriv_profile(p: Profile, s: f64) -> f64 {
    if !(-1.0..=0.0).contains(&s) {
        return 0.0;
    }
    match p {
        Profile::Quintic => {
            let t = s + 1.0;
            30.0 * t * t * (1.0 - t) * (1.0 - t)
        }
        Profile::Plateau { h, w } => {
            if s < -1.0 + w {
                h * smoothstep((s + 1.0) / w)
            } else if s <= -w {
                h
            } else {
                h * smoothstep(-s / w)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moderate_displacement_satisfies_derivative_bound() {
        let c = build_cutoff(1.0, 0.5).unwrap();
        let sup = c.deriv_samples.iter().fold(0.0f64, |a, &v| a.max(v));
        assert!(sup <= 1.8 + 1e-12);
        assert_eq!(c.samples[0], 0.0);
        assert_eq!(*c.samples.last().unwrap(), 1.0);
    }

    #[test]
    fn near_contact_displacement_keeps_positive_margin() {
        // For eta_max this close to kappa the 0.9 safety bound is not
        // attainable by any profile integrating to 1; the flattest plateau
        // still keeps beta_q strictly increasing.
        let (kappa, eta_max) = (1.0, 0.99);
        let c = build_cutoff(kappa, eta_max).unwrap();
        let sup = c.deriv_samples.iter().fold(0.0f64, |a, &v| a.max(v));
        assert!(sup < kappa / eta_max);
        let margin = 1.0 - eta_max / kappa * sup;
        assert!(margin > 0.004, "margin = {margin}");
    }

    #[test]
    fn eta_max_at_kappa_is_rejected() {
        assert!(matches!(
            build_cutoff(1.0, 1.0),
            Err(Error::InvalidDisplacement(_))
        ));
        assert!(build_cutoff(1.0, 1.5).is_err());
    }

    #[test]
    fn profile_is_monotone_normalized_and_consistent() {
        for eta_max in [0.1, 0.45, 0.6, 0.8, 0.95] {
            let c = build_cutoff(1.0, eta_max).unwrap();
            for pair in c.samples.windows(2) {
                assert!(pair[1] >= pair[0] - 1e-15);
            }
            // derivative table integrates to 1
            let n = c.deriv_samples.len() - 1;
            let h = 1.0 / n as f64;
            let integral = crate::quad::trapezoid(&c.deriv_samples, h);
            assert!((integral - 1.0).abs() < 1e-6, "eta_max={eta_max}");
            // analytic derivative matches finite differences of eval
            for i in 1..40 {
                let s = -1.0 + 0.025 * i as f64 - 0.003;
                let fd = (c.eval(s + 1e-6) - c.eval(s - 1e-6)) / 2e-6;
                assert!((fd - c.deriv(s)).abs() < 1e-5);
            }
        }
    }
}
