//! Complex Gamma function (Lanczos approximation, g = 607/128, 15 terms).

use std::f64::consts::PI;

use crate::complex::{C64, ONE};
use crate::error::{Error, Result};

const G: f64 = 607.0 / 128.0;

const COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// Distance below which a point counts as sitting on a pole.
pub const POLE_TOL: f64 = 1e-12;

fn lanczos_sum(zm1: C64) -> C64 {
    let mut acc = C64::new(COEFFS[0], 0.0);
    for (k, &ck) in COEFFS.iter().enumerate().skip(1) {
        acc += ck / (zm1 + k as f64);
    }
    acc
}

/// log Γ(z) for Re z ≥ 1/2 (not branch-normalised).
fn ln_gamma_right(z: C64) -> C64 {
    let zm1 = z - 1.0;
    let t = zm1 + G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm1 + 0.5) * t.ln() - t + lanczos_sum(zm1).ln()
}

fn nonpositive_integer(z: C64) -> bool {
    z.re < 0.5 && z.im.abs() < POLE_TOL && (z.re - z.re.round()).abs() < POLE_TOL
}

pub fn gamma(z: C64) -> Result<C64> {
    if nonpositive_integer(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    let v = if z.re >= 0.5 {
        ln_gamma_right(z).exp()
    } else {
        PI / ((PI * z).sin() * ln_gamma_right(ONE - z).exp())
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NumericOverflow(format!("gamma({z})")))
    }
}

/// 1/Γ(z), entire; exactly zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        (-ln_gamma_right(z)).exp()
    } else {
        (PI * z).sin() * ln_gamma_right(ONE - z).exp() / PI
    }
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: C64, n: usize) -> C64 {
    (0..n).fold(ONE, |acc, k| acc * (a + k as f64))
}
