//! Gamma, Gauss and Kummer functions with their connection and Stokes data.

mod dd;
pub mod gamma;
pub mod gauss;
pub mod kummer;

use serde::{Deserialize, Serialize};

use crate::complex::{dist_to_integers, fmt_c, serde_cx, C64};
use crate::error::{Error, Result};

pub use gamma::{gamma, pochhammer, rgamma};
pub use gauss::{
    gauss_basis_at_0, gauss_basis_at_1, gauss_basis_at_inf, gauss_connection_matrices,
    gauss_monodromy_matrices, hyp2f1, GaussConnection, GaussMonodromy,
};
pub use kummer::{
    hyp1f1, kummer_asymptotic_basis, kummer_basis_at_0, kummer_connection_matrix,
    kummer_monodromy_matrices, kummer_stokes_matrices, KummerMonodromy, KummerStokes,
};

/// Default distance from the integers required of connection parameters.
pub const GENERICITY_MARGIN: f64 = 0.05;

/// Parameters (α, β, γ) of the Gauss hypergeometric equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussParams {
    #[serde(with = "serde_cx")]
    pub alpha: C64,
    #[serde(with = "serde_cx")]
    pub beta: C64,
    #[serde(with = "serde_cx")]
    pub gamma: C64,
}

impl GaussParams {
    pub fn new(alpha: C64, beta: C64, gamma: C64) -> Self {
        GaussParams { alpha, beta, gamma }
    }

    /// Named quantities that must stay off the integers for the connection formulas.
    pub fn critical(&self) -> [(&'static str, C64); 3] {
        let GaussParams { alpha: a, beta: b, gamma: c } = *self;
        [("gamma", c), ("gamma-alpha-beta", c - a - b), ("alpha-beta", a - b)]
    }

    pub fn check_generic(&self, margin: f64) -> Result<()> {
        check_critical(&self.critical(), margin)
    }
}

/// Parameters (α, γ) of Kummer's equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KummerParams {
    #[serde(with = "serde_cx")]
    pub alpha: C64,
    #[serde(with = "serde_cx")]
    pub gamma: C64,
}

impl KummerParams {
    pub fn new(alpha: C64, gamma: C64) -> Self {
        KummerParams { alpha, gamma }
    }

    pub fn critical(&self) -> [(&'static str, C64); 2] {
        [("gamma", self.gamma), ("gamma-2alpha", self.gamma - 2.0 * self.alpha)]
    }

    pub fn check_generic(&self, margin: f64) -> Result<()> {
        check_critical(&self.critical(), margin)
    }
}

fn check_critical(items: &[(&'static str, C64)], margin: f64) -> Result<()> {
    let bad: Vec<String> = items
        .iter()
        .filter(|(_, v)| dist_to_integers(*v) < margin)
        .map(|(name, v)| format!("{name} = {} is within {margin} of an integer", fmt_c(*v)))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NonGenericParams(bad.join("; ")))
    }
}
