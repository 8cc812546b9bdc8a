//! Viscous stress models: Newtonian and the two generalized (power-law)
//! forms, plus the sampling audit of their growth/coercivity/monotonicity
//! axioms.

use crate::error::{Error, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type SymTensor = [[f64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StressModel {
    /// S(D) = 2 sigma D.
    Newtonian { sigma_visc: f64 },
    /// S(D) = mu0 (delta + |D|)^{p-2} D.
    PStructureAdditive { mu0: f64, delta: f64, p: f64 },
    /// S(D) = mu0 (delta^2 + |D|^2)^{(p-2)/2} D.
    PStructureQuadratic { mu0: f64, delta: f64, p: f64 },
}

pub fn frobenius(d: &SymTensor) -> f64 {
    (d[0][0] * d[0][0] + d[0][1] * d[0][1] + d[1][0] * d[1][0] + d[1][1] * d[1][1]).sqrt()
}

fn double_dot(a: &SymTensor, b: &SymTensor) -> f64 {
    a[0][0] * b[0][0] + a[0][1] * b[0][1] + a[1][0] * b[1][0] + a[1][1] * b[1][1]
}

impl StressModel {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            StressModel::Newtonian { sigma_visc } => sigma_visc > 0.0,
            StressModel::PStructureAdditive { mu0, delta, p }
            | StressModel::PStructureQuadratic { mu0, delta, p } => {
                mu0 > 0.0 && delta >= 0.0 && p > 1.0 && p.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("bad stress model {self:?}")))
        }
    }

    /// Effective viscosity ν(|D|) so that S(D) = ν(|D|) D; keeping the
    /// nonlinearity in a scalar factor is what the lagged-viscosity coupling
    /// iteration relies on.
    pub fn effective_viscosity(&self, d_norm: f64) -> f64 {
        match *self {
            StressModel::Newtonian { sigma_visc } => 2.0 * sigma_visc,
            StressModel::PStructureAdditive { mu0, delta, p } => {
                let base = delta + d_norm;
                if base == 0.0 {
                    // viscosity limit at D = 0; the stress itself is 0 there
                    match p.partial_cmp(&2.0).unwrap() {
                        std::cmp::Ordering::Equal => mu0,
                        std::cmp::Ordering::Greater => 0.0,
                        std::cmp::Ordering::Less => f64::INFINITY,
                    }
                } else {
                    mu0 * base.powf(p - 2.0)
                }
            }
            StressModel::PStructureQuadratic { mu0, delta, p } => {
                let base = delta * delta + d_norm * d_norm;
                if base == 0.0 {
                    match p.partial_cmp(&2.0).unwrap() {
                        std::cmp::Ordering::Equal => mu0,
                        std::cmp::Ordering::Greater => 0.0,
                        std::cmp::Ordering::Less => f64::INFINITY,
                    }
                } else {
                    mu0 * base.powf(0.5 * (p - 2.0))
                }
            }
        }
    }

    pub fn stress(&self, d: &SymTensor) -> Result<SymTensor> {
        if (d[0][1] - d[1][0]).abs() > 1e-12 * (1.0 + frobenius(d)) {
            return Err(Error::InvalidParameters(
                "stress input tensor is not symmetric".into(),
            ));
        }
        let n = frobenius(d);
        // S(0) = 0 for every model, including the singular-viscosity range p < 2.
        if n == 0.0 {
            return Ok([[0.0; 2]; 2]);
        }
        let nu = self.effective_viscosity(n);
        Ok([
            [nu * d[0][0], nu * d[0][1]],
            [nu * d[1][0], nu * d[1][1]],
        ])
    }

    /// Exponent p of the growth scale (2 for Newtonian).
    fn p_exponent(&self) -> f64 {
        match *self {
            StressModel::Newtonian { .. } => 2.0,
            StressModel::PStructureAdditive { p, .. }
            | StressModel::PStructureQuadratic { p, .. } => p,
        }
    }

    fn delta(&self) -> f64 {
        match *self {
            StressModel::Newtonian { .. } => 0.0,
            StressModel::PStructureAdditive { delta, .. }
            | StressModel::PStructureQuadratic { delta, .. } => delta,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AuditReport {
    pub growth_ok: bool,
    pub coercivity_ok: bool,
    pub monotone_violations: usize,
    /// fitted growth constant: max |S(D)| / ((delta+|D|)^{p-2} |D|)
    pub c0_max: f64,
    /// fitted coercivity constant: min S(D):D / ((delta+|D|)^{p-2} |D|^2)
    pub c1_min: f64,
}

fn random_sym(rng: &mut StdRng, scale: f64) -> SymTensor {
    let a = rng.gen_range(-scale..scale);
    let b = rng.gen_range(-scale..scale);
    let c = rng.gen_range(-scale..scale);
    [[a, c], [c, b]]
}

/// Sample the stress axioms on random symmetric pairs. Both built-in
/// generalized models must come back with zero monotonicity violations.
pub fn p_structure_audit(model: &StressModel, n_samples: usize, seed: u64) -> Result<AuditReport> {
    model.validate()?;
    audit_fn(|d| model.stress(d).unwrap(), model.p_exponent(), model.delta(), n_samples, seed)
}

/// Audit an arbitrary stress function against the axioms with the given
/// growth scale; used for negative-control fixtures in tests.
pub fn audit_fn(
    stress: impl Fn(&SymTensor) -> SymTensor,
    p: f64,
    delta: f64,
    n_samples: usize,
    seed: u64,
) -> Result<AuditReport> {
    if n_samples == 0 {
        return Err(Error::InvalidParameters("n_samples must be >= 1".into()));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut c0_max: f64 = 0.0;
    let mut c1_min = f64::INFINITY;
    let mut violations = 0usize;
    for _ in 0..n_samples {
        let scale = 10.0f64.powf(rng.gen_range(-2.0..1.0));
        let d = random_sym(&mut rng, scale);
        let e = random_sym(&mut rng, scale);
        let sd = stress(&d);
        let se = stress(&e);
        let nd = frobenius(&d);
        if nd > 1e-14 {
            let growth_scale = (delta + nd).powf(p - 2.0) * nd;
            c0_max = c0_max.max(frobenius(&sd) / growth_scale);
            c1_min = c1_min.min(double_dot(&sd, &d) / (growth_scale * nd));
        }
        let diff = [
            [d[0][0] - e[0][0], d[0][1] - e[0][1]],
            [d[1][0] - e[1][0], d[1][1] - e[1][1]],
        ];
        if frobenius(&diff) > 1e-12 {
            let sdiff = [
                [sd[0][0] - se[0][0], sd[0][1] - se[0][1]],
                [sd[1][0] - se[1][0], sd[1][1] - se[1][1]],
            ];
            if double_dot(&sdiff, &diff) <= 0.0 {
                violations += 1;
            }
        }
    }
    Ok(AuditReport {
        growth_ok: c0_max.is_finite(),
        coercivity_ok: c1_min > 0.0,
        monotone_violations: violations,
        c0_max,
        c1_min,
    })
}
