//! Gauss hypergeometric function, its local bases and connection data.

use serde::Serialize;

use super::gamma::{gamma, rgamma};
use super::GaussParams;
use crate::complex::{cpow, dist_to_integers, exp_2pii, exp_ipi, C64, ONE};
use crate::error::{Error, Result};
use crate::matrix::Matrix2;

const MAX_TERMS: usize = 5000;
/// Largest transformed argument modulus accepted for series summation.
const REGION_RADIUS: f64 = 0.9;
/// Closer than this to an integer, a transformation with Gamma poles is skipped.
const TRANSFORM_GUARD: f64 = 1e-8;

fn series(a: C64, b: C64, c: C64, x: C64) -> Result<C64> {
    let mut sum = ONE;
    let mut term = ONE;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let den = (c + nf) * (nf + 1.0);
        if den.norm() == 0.0 {
            return Err(Error::NonGenericParams(format!("c = {c} is a non-positive integer")));
        }
        let ratio = (a + nf) * (b + nf) / den;
        term *= ratio * x;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && (ratio * x).norm() < 1.0 {
            return Ok(sum);
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::OutOfRegion(format!("2F1 series at {x} did not converge")))
}

fn gamma_ratio(num: &[C64], den: &[C64]) -> Result<C64> {
    let mut v = ONE;
    for &z in num {
        v *= gamma(z).map_err(|_| Error::NonGenericParams(format!("Gamma pole at {z}")))?;
    }
    for &z in den {
        v *= rgamma(z);
    }
    Ok(v)
}

#[derive(Clone, Copy)]
enum Transform {
    Direct,
    Pfaff,
    OneMinus,
    Inverse,
    InverseOneMinus,
    OneMinusInverse,
}

fn transformed_arg(t: Transform, x: C64) -> C64 {
    match t {
        Transform::Direct => x,
        Transform::Pfaff => x / (x - 1.0),
        Transform::OneMinus => ONE - x,
        Transform::Inverse => ONE / x,
        Transform::InverseOneMinus => ONE / (ONE - x),
        Transform::OneMinusInverse => ONE - ONE / x,
    }
}

fn blocked(t: Transform, a: C64, b: C64, c: C64) -> bool {
    let near = |z: C64| dist_to_integers(z) < TRANSFORM_GUARD;
    match t {
        Transform::Direct | Transform::Pfaff => false,
        Transform::OneMinus | Transform::OneMinusInverse => near(c - a - b),
        Transform::Inverse | Transform::InverseOneMinus => near(a - b),
    }
}

fn apply(t: Transform, a: C64, b: C64, c: C64, x: C64) -> Result<C64> {
    let w = transformed_arg(t, x);
    match t {
        Transform::Direct => series(a, b, c, w),
        Transform::Pfaff => Ok(cpow(ONE - x, -a) * series(a, c - b, c, w)?),
        Transform::OneMinus => {
            let k1 = gamma_ratio(&[c, c - a - b], &[c - a, c - b])?;
            let k2 = gamma_ratio(&[c, a + b - c], &[a, b])?;
            Ok(k1 * series(a, b, a + b - c + 1.0, w)?
                + k2 * cpow(w, c - a - b) * series(c - a, c - b, c - a - b + 1.0, w)?)
        }
        Transform::Inverse => {
            let k1 = gamma_ratio(&[c, b - a], &[b, c - a])?;
            let k2 = gamma_ratio(&[c, a - b], &[a, c - b])?;
            Ok(k1 * cpow(-x, -a) * series(a, a - c + 1.0, a - b + 1.0, w)?
                + k2 * cpow(-x, -b) * series(b, b - c + 1.0, b - a + 1.0, w)?)
        }
        Transform::InverseOneMinus => {
            let k1 = gamma_ratio(&[c, b - a], &[b, c - a])?;
            let k2 = gamma_ratio(&[c, a - b], &[a, c - b])?;
            Ok(k1 * cpow(ONE - x, -a) * series(a, c - b, a - b + 1.0, w)?
                + k2 * cpow(ONE - x, -b) * series(b, c - a, b - a + 1.0, w)?)
        }
        Transform::OneMinusInverse => {
            let k1 = gamma_ratio(&[c, c - a - b], &[c - a, c - b])?;
            let k2 = gamma_ratio(&[c, a + b - c], &[a, b])?;
            Ok(k1 * cpow(x, -a) * series(a, a - c + 1.0, a + b - c + 1.0, w)?
                + k2 * cpow(ONE - x, c - a - b)
                    * cpow(x, a - c)
                    * series(c - a, ONE - a, c - a - b + 1.0, w)?)
        }
    }
}

/// ₂F₁(α, β; γ; x) on the principal sheet.
///
/// The series is summed directly or after the linear transformation whose
/// argument has the smallest modulus.
pub fn hyp2f1(p: &GaussParams, x: C64) -> Result<C64> {
    let GaussParams { alpha: a, beta: b, gamma: c } = *p;
    if dist_to_integers(c) < 1e-12 && c.re < 0.5 {
        return Err(Error::NonGenericParams(format!("gamma = {c} is a non-positive integer")));
    }
    if x.im == 0.0 && x.re >= 1.0 {
        return Err(Error::CutViolation(format!("x = {x} lies on [1, inf)")));
    }
    if x.norm() <= 0.5 {
        return series(a, b, c, x);
    }
    let mut candidates = [
        Transform::Direct,
        Transform::Pfaff,
        Transform::OneMinus,
        Transform::Inverse,
        Transform::InverseOneMinus,
        Transform::OneMinusInverse,
    ]
    .map(|t| (transformed_arg(t, x).norm(), t));
    candidates.sort_by(|u, v| u.0.total_cmp(&v.0));
    let mut saw_blocked = false;
    for (modulus, t) in candidates {
        if modulus > REGION_RADIUS {
            break;
        }
        if blocked(t, a, b, c) {
            saw_blocked = true;
            continue;
        }
        return apply(t, a, b, c, x);
    }
    if saw_blocked {
        Err(Error::NonGenericParams(format!("no usable transformation at x = {x} for {p:?}")))
    } else {
        Err(Error::OutOfRegion(format!("{x}")))
    }
}

/// (ψ₁, ψ₂) around x = 0.
pub fn gauss_basis_at_0(p: &GaussParams, x: C64) -> Result<[C64; 2]> {
    let GaussParams { alpha: a, beta: b, gamma: c } = *p;
    Ok([
        hyp2f1(p, x)?,
        cpow(x, ONE - c) * hyp2f1(&GaussParams::new(a + 1.0 - c, b + 1.0 - c, 2.0 - c), x)?,
    ])
}

/// (ψ₁, ψ₂) around x = 1.
pub fn gauss_basis_at_1(p: &GaussParams, x: C64) -> Result<[C64; 2]> {
    let GaussParams { alpha: a, beta: b, gamma: c } = *p;
    let w = ONE - x;
    Ok([
        hyp2f1(&GaussParams::new(a, b, a + b - c + 1.0), w)?,
        cpow(w, c - a - b) * hyp2f1(&GaussParams::new(c - a, c - b, c + 1.0 - a - b), w)?,
    ])
}

/// (ψ₁, ψ₂) around x = ∞, principal powers of x.
pub fn gauss_basis_at_inf(p: &GaussParams, x: C64) -> Result<[C64; 2]> {
    let GaussParams { alpha: a, beta: b, gamma: c } = *p;
    let w = ONE / x;
    Ok([
        cpow(x, -a) * hyp2f1(&GaussParams::new(a, a - c + 1.0, a + 1.0 - b), w)?,
        cpow(x, -b) * hyp2f1(&GaussParams::new(b, b - c + 1.0, b + 1.0 - a), w)?,
    ])
}

/// Connection matrices with ψ⁽ⁱ⁾ = ψ⁽ʲ⁾·C_ij.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GaussConnection {
    pub c01: Matrix2,
    pub c0inf: Matrix2,
    pub cinf1: Matrix2,
}

pub fn gauss_connection_matrices(p: &GaussParams) -> Result<GaussConnection> {
    gauss_connection_with_margin(p, super::GENERICITY_MARGIN)
}

pub fn gauss_connection_with_margin(p: &GaussParams, margin: f64) -> Result<GaussConnection> {
    p.check_generic(margin)?;
    let GaussParams { alpha: a, beta: b, gamma: c } = *p;
    let g = |num: &[C64], den: &[C64]| gamma_ratio(num, den);
    let c01 = Matrix2::new(
        g(&[c, c - a - b], &[c - a, c - b])?,
        g(&[2.0 - c, c - a - b], &[ONE - a, ONE - b])?,
        g(&[c, a + b - c], &[a, b])?,
        g(&[2.0 - c, a + b - c], &[a - c + 1.0, b - c + 1.0])?,
    );
    let c0inf = Matrix2::new(
        exp_ipi(a) * g(&[c, b - a], &[b, c - a])?,
        exp_ipi(a - c + 1.0) * g(&[2.0 - c, b - a], &[ONE - a, b - c + 1.0])?,
        exp_ipi(b) * g(&[c, a - b], &[a, c - b])?,
        exp_ipi(b - c + 1.0) * g(&[2.0 - c, a - b], &[ONE - b, a - c + 1.0])?,
    );
    let e = exp_ipi(c - a - b);
    let cinf1 = Matrix2::new(
        g(&[a - b + 1.0, c - a - b], &[c - b, ONE - b])?,
        g(&[b - a + 1.0, c - a - b], &[c - a, ONE - a])?,
        e * g(&[a - b + 1.0, a + b - c], &[a - c + 1.0, a])?,
        e * g(&[b - a + 1.0, a + b - c], &[b - c + 1.0, b])?,
    );
    Ok(GaussConnection { c01, c0inf, cinf1 })
}

/// Local monodromies in the basis ψ⁽⁰⁾; they satisfy M∞·M₁·M₀ = I.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GaussMonodromy {
    pub m0: Matrix2,
    pub m1: Matrix2,
    pub minf: Matrix2,
}

pub fn gauss_monodromy_matrices(p: &GaussParams) -> Result<GaussMonodromy> {
    let GaussParams { alpha: a, beta: b, gamma: c } = *p;
    let con = gauss_connection_matrices(p)?;
    let m0 = Matrix2::diag(ONE, exp_2pii(-c));
    let m1 = con.c01.inverse()? * Matrix2::diag(ONE, exp_2pii(c - a - b)) * con.c01;
    let minf = con.c0inf.inverse()? * Matrix2::diag(exp_2pii(a), exp_2pii(b)) * con.c0inf;
    Ok(GaussMonodromy { m0, m1, minf })
}
