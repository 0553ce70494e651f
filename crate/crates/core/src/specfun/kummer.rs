//! Kummer's confluent function, asymptotic solutions at infinity and
//! the connection and Stokes data relating them.

use std::f64::consts::PI;

use serde::Serialize;

use super::dd::CDd;
use super::gamma::{gamma, rgamma};
use super::KummerParams;
use crate::complex::{cpow, dist_to_integers, exp_2pii, exp_ipi, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::matrix::Matrix2;

const MAX_TERMS: usize = 6000;

/// ₁F₁(α; γ; z), summed in double-double arithmetic.
pub fn hyp1f1(p: &KummerParams, z: C64) -> Result<C64> {
    let (a, c) = (p.alpha, p.gamma);
    if c.re < 0.5 && dist_to_integers(c) < 1e-12 {
        return Err(Error::NonGenericParams(format!("gamma = {c} is a non-positive integer")));
    }
    let zd = CDd::from_c64(z);
    let (ad, cd) = (CDd::from_c64(a), CDd::from_c64(c));
    let mut sum = CDd::from_c64(ONE);
    let mut term = sum;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let shift = CDd::from_c64(C64::new(nf, 0.0));
        let num = (ad + shift) * zd;
        let den = (cd + shift) * CDd::from_c64(C64::new(nf + 1.0, 0.0));
        term = term * num / den;
        sum = sum + term;
        let t = term.abs_hi();
        if t == 0.0 || (nf > z.norm() && t <= 1e-33 * sum.abs_hi().max(1e-300)) {
            let v = sum.to_c64();
            return if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::NumericOverflow(format!("1F1 at {z}")))
            };
        }
    }
    Err(Error::NumericOverflow(format!("1F1 series at {z} did not converge")))
}

/// (φ₁, φ₂) around z = 0.
pub fn kummer_basis_at_0(p: &KummerParams, z: C64) -> Result<[C64; 2]> {
    let (a, c) = (p.alpha, p.gamma);
    Ok([
        hyp1f1(p, z)?,
        cpow(z, ONE - c) * hyp1f1(&KummerParams::new(a + 1.0 - c, 2.0 - c), z)?,
    ])
}

/// Sum of Σ_k (u)_k (v)_k / k! · w^k stopped just before the smallest term.
fn optimally_truncated(u: C64, v: C64, w: C64) -> C64 {
    let mut sum = ONE;
    let mut term = ONE;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let next = term * (u + kf) * (v + kf) / (kf + 1.0) * w;
        if next.norm() >= term.norm() || next.norm() <= 1e-18 * sum.norm() {
            if next.norm() < term.norm() {
                sum += next;
            }
            break;
        }
        sum += next;
        term = next;
    }
    sum
}

/// Asymptotic solutions (φ₁(e^{−πi}z), φ₂(z)) at infinity with principal powers of z.
pub fn kummer_asymptotic_basis(p: &KummerParams, z: C64) -> [C64; 2] {
    let (a, c) = (p.alpha, p.gamma);
    let w = ONE / z;
    [
        cpow(z, -a) * optimally_truncated(a, a + 1.0 - c, -w),
        z.exp() * cpow(z, a - c) * optimally_truncated(c - a, ONE - a, w),
    ]
}

/// The matrix C(α, γ) with (φ⁽⁰⁾) = (φ⁽∞⁾)·C.
pub fn kummer_connection_matrix(p: &KummerParams) -> Result<Matrix2> {
    let (a, c) = (p.alpha, p.gamma);
    if dist_to_integers(c) < super::GENERICITY_MARGIN {
        return Err(Error::NonGenericParams(format!("gamma = {c} is near an integer")));
    }
    let g = |z: C64| gamma(z).map_err(|_| Error::NonGenericParams(format!("Gamma pole at {z}")));
    let gc = g(c)?;
    let g2c = g(2.0 - c)?;
    Ok(Matrix2::new(
        gc * exp_ipi(a) * rgamma(c - a),
        g2c * exp_ipi(ONE + a - c) * rgamma(ONE - a),
        gc * rgamma(a),
        g2c * rgamma(ONE + a - c),
    ))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KummerStokes {
    pub s1: Matrix2,
    pub s2: Matrix2,
}

pub fn kummer_stokes_matrices(p: &KummerParams) -> KummerStokes {
    let (a, c) = (p.alpha, p.gamma);
    let two_pi_i = 2.0 * PI * I;
    let lower = -two_pi_i * exp_ipi(c - 2.0 * a) * rgamma(a) * rgamma(ONE + a - c);
    let upper = -two_pi_i * exp_ipi(4.0 * a - 2.0 * c) * rgamma(ONE - a) * rgamma(c - a);
    KummerStokes {
        s1: Matrix2::new(ONE, ZERO, lower, ONE),
        s2: Matrix2::new(ONE, upper, ZERO, ONE),
    }
}

/// Monodromy at 0 and at ∞ in the asymptotic basis; M₀·M∞ = I.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KummerMonodromy {
    pub m0: Matrix2,
    pub minf: Matrix2,
    pub exp_tinf: Matrix2,
}

pub fn kummer_monodromy_matrices(p: &KummerParams) -> Result<KummerMonodromy> {
    let (a, c) = (p.alpha, p.gamma);
    let con = kummer_connection_matrix(p)?;
    let st = kummer_stokes_matrices(p);
    let m0 = con * Matrix2::diag(ONE, exp_2pii(-c)) * con.inverse()?;
    let exp_tinf = Matrix2::diag(exp_2pii(a), exp_2pii(c - a));
    Ok(KummerMonodromy { m0, minf: st.s1 * st.s2 * exp_tinf, exp_tinf })
}
