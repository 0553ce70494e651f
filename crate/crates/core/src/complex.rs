//! Complex scalar helpers shared by every module.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub const fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `e^{i pi z}`.
#[inline]
pub fn exp_ipi(z: C64) -> C64 {
    (I * std::f64::consts::PI * z).exp()
}

/// `e^{2 pi i z}`.
#[inline]
pub fn exp_2pii(z: C64) -> C64 {
    (I * (2.0 * std::f64::consts::PI) * z).exp()
}

/// Principal-branch power `x^a = exp(a log x)`, arg in (-pi, pi].
#[inline]
pub fn cpow(x: C64, a: C64) -> C64 {
    if x == ZERO {
        return if a == ZERO { ONE } else { ZERO };
    }
    (a * x.ln()).exp()
}

pub fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn check_finite(z: C64, what: &str) -> Result<C64> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NumericOverflow(what.to_string()))
    }
}

/// Distance from `z` to the nearest integer.
pub fn dist_to_integers(z: C64) -> f64 {
    let n = z.re.round();
    ((z.re - n).powi(2) + z.im.powi(2)).sqrt()
}

/// Relative difference `|a-b| / max(1, |b|)`.
pub fn rel_diff(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

pub fn fmt_c(z: C64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// JSON shape `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CxJson {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for CxJson {
    fn from(z: C64) -> Self {
        CxJson { re: z.re, im: z.im }
    }
}

impl From<CxJson> for C64 {
    fn from(z: CxJson) -> Self {
        C64::new(z.re, z.im)
    }
}

/// `serde(with = "crate::complex::serde_cx")` for a single complex field.
pub mod serde_cx {
    use super::*;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
        CxJson::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<C64, D::Error> {
        CxJson::deserialize(d).map(C64::from)
    }
}
