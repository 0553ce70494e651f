//! Complex parameters of the system and their genericity conditions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{c, dist_to_integers, fmt_c, serde_cx, C64, ONE};
use crate::error::{Error, Result};
use crate::specfun::GENERICITY_MARGIN;

/// Tolerance on the Fuchs relation α0+α1+α2+α∞ = 1−2ν.
pub const FUCHS_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(with = "serde_cx")]
    pub alpha0: C64,
    #[serde(with = "serde_cx")]
    pub alpha1: C64,
    #[serde(with = "serde_cx")]
    pub alpha2: C64,
    #[serde(rename = "alphaInf", alias = "alpha_inf", with = "serde_cx")]
    pub alpha_inf: C64,
    #[serde(with = "serde_cx")]
    pub nu: C64,
    #[serde(with = "serde_cx")]
    pub eta: C64,
}

/// One failed genericity condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    pub ok: bool,
    pub fuchs_residual: f64,
    pub violations: Vec<Violation>,
}

impl Params {
    /// Builds a tuple with α∞ fixed by the Fuchs relation.
    pub fn from_fuchs(alpha0: C64, alpha1: C64, alpha2: C64, nu: C64, eta: C64) -> Self {
        let alpha_inf = ONE - 2.0 * nu - alpha0 - alpha1 - alpha2;
        Params { alpha0, alpha1, alpha2, alpha_inf, nu, eta }
    }

    pub fn fuchs_residual(&self) -> f64 {
        (self.alpha0 + self.alpha1 + self.alpha2 + self.alpha_inf - (ONE - 2.0 * self.nu)).norm()
    }

    /// ν(ν+α∞), the constant term shared by both Hamiltonians.
    pub fn kappa(&self) -> C64 {
        self.nu * (self.nu + self.alpha_inf)
    }

    /// The combinations that must avoid the integers.
    pub fn integer_conditions(&self) -> Vec<(&'static str, C64)> {
        let (a0, a1, a2, ai) = (self.alpha0, self.alpha1, self.alpha2, self.alpha_inf);
        vec![
            ("α1", a1),
            ("α∞", ai),
            ("α1+α∞", a1 + ai),
            ("α1−α∞", a1 - ai),
            ("α0+α2", a0 + a2),
            ("α0−α2", a0 - a2),
            ("α0+α2+α∞", a0 + a2 + ai),
            ("α0+α2−α∞", a0 + a2 - ai),
            ("α0−α2+α∞", a0 - a2 + ai),
            ("α0−α2−α∞", a0 - a2 - ai),
        ]
    }

    pub fn check_generic_with(&self, margin: f64) -> GenericityReport {
        let mut violations: Vec<Violation> = self
            .integer_conditions()
            .into_iter()
            .map(|(name, v)| (name, dist_to_integers(v)))
            .filter(|&(_, d)| d < margin)
            .map(|(name, d)| Violation { condition: format!("{name} ∈ ℤ"), distance: d })
            .collect();
        if self.eta.norm() < margin {
            violations.push(Violation { condition: "η = 0".into(), distance: self.eta.norm() });
        }
        let fuchs_residual = self.fuchs_residual();
        if !(fuchs_residual <= FUCHS_TOL) {
            violations.push(Violation {
                condition: "Fuchs relation α0+α1+α2+α∞ = 1−2ν".into(),
                distance: fuchs_residual,
            });
        }
        GenericityReport { ok: violations.is_empty(), fuchs_residual, violations }
    }

    pub fn check_generic(&self) -> GenericityReport {
        self.check_generic_with(GENERICITY_MARGIN)
    }

    /// `Ok(())` when generic, otherwise `NonGenericParams` listing the violations.
    pub fn require_generic(&self) -> Result<()> {
        let rep = self.check_generic();
        if rep.ok {
            Ok(())
        } else {
            let list: Vec<String> = rep.violations.iter().map(|v| v.condition.clone()).collect();
            Err(Error::NonGenericParams(list.join(", ")))
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "α0={} α1={} α2={} α∞={} ν={} η={}",
            fmt_c(self.alpha0),
            fmt_c(self.alpha1),
            fmt_c(self.alpha2),
            fmt_c(self.alpha_inf),
            fmt_c(self.nu),
            fmt_c(self.eta)
        )
    }
}

fn uniform_disc(rng: &mut ChaCha8Rng, center: C64, radius: f64) -> C64 {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        if x * x + y * y <= 1.0 {
            return center + c(x, y) * radius;
        }
    }
}

/// Seeded sampler of generic parameter tuples.
#[derive(Clone, Debug)]
pub struct ParamSampler {
    pub center: C64,
    pub radius: f64,
    pub eta_radius: f64,
    pub eta_min: f64,
    pub margin: f64,
    pub max_draws: usize,
}

impl Default for ParamSampler {
    fn default() -> Self {
        ParamSampler {
            center: c(0.3, 0.1),
            radius: 0.5,
            eta_radius: 1.0,
            eta_min: 0.1,
            margin: GENERICITY_MARGIN,
            max_draws: 100_000,
        }
    }
}

impl ParamSampler {
    /// Draws until `check_generic` and `accept` both pass.
    pub fn sample_with(&self, seed: u64, accept: impl Fn(&Params) -> bool) -> Result<Params> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..self.max_draws {
            let a0 = uniform_disc(&mut rng, self.center, self.radius);
            let a1 = uniform_disc(&mut rng, self.center, self.radius);
            let a2 = uniform_disc(&mut rng, self.center, self.radius);
            let nu = uniform_disc(&mut rng, self.center, self.radius);
            let eta = loop {
                let e = uniform_disc(&mut rng, c(0.0, 0.0), self.eta_radius);
                if e.norm() >= self.eta_min {
                    break e;
                }
            };
            let p = Params::from_fuchs(a0, a1, a2, nu, eta);
            if p.check_generic_with(self.margin).ok && accept(&p) {
                return Ok(p);
            }
        }
        Err(Error::NonGenericParams(format!("no generic draw in {} attempts", self.max_draws)))
    }
}
