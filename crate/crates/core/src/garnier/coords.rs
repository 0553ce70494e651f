//! Canonical map back to the accessory coordinates `(λ, μ, K)` and
//! convergence diagnostics for the truncated expansions.

use serde::Serialize;

use super::expand::SolutionExpansion;
use super::verify::{hamiltonians_eval, PhasePoint};
use crate::complex::{C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::series::{BiSeries, Var};

/// Default bound on `|t1|` and `|s2|` for evaluating a truncated expansion.
pub const TRUST_RADIUS: f64 = 1e-2;
/// Roots closer than this are not labelled.
pub const LAMBDA_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GarnierCoords {
    #[serde(with = "crate::complex::serde_cx")]
    pub lambda1: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub lambda2: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub mu1: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub mu2: C64,
    #[serde(rename = "K1", with = "crate::complex::serde_cx")]
    pub k1: C64,
    #[serde(rename = "K2", with = "crate::complex::serde_cx")]
    pub k2: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub t1: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub t2: C64,
}

/// `s2 = t2/(t2−1)`.
pub fn s2_of_t2(t2: C64) -> Result<C64> {
    if t2 == ONE {
        return Err(Error::SingularTime("t2 = 1".into()));
    }
    Ok(t2 / (t2 - 1.0))
}

fn check_times(t1: C64, t2: C64) -> Result<()> {
    if t1 == ZERO {
        return Err(Error::SingularTime("t1 = 0".into()));
    }
    if t2 == ZERO || t2 == ONE {
        return Err(Error::SingularTime(format!("t2 = {t2}")));
    }
    Ok(())
}

/// Orders two roots: smaller principal argument of `λ − 1` first, then modulus.
pub fn label_roots(a: C64, b: C64) -> Result<(C64, C64)> {
    let gap = (a - b).norm();
    if gap < LAMBDA_TOL {
        return Err(Error::DegenerateLambda(gap));
    }
    let key = |z: C64| ((z - 1.0).arg(), z.norm());
    let (ka, kb) = (key(a), key(b));
    let a_first = if (ka.0 - kb.0).abs() > 1e-14 { ka.0 < kb.0 } else { ka.1 <= kb.1 };
    Ok(if a_first { (a, b) } else { (b, a) })
}

/// Roots `λ1, λ2` from the two product relations
/// `(λ1−1)(λ2−1) = −t1(t2−1)q1`, `(λ1−t2)(λ2−t2) = (t2−1)²q2`.
pub fn lambdas(q1: C64, q2: C64, t1: C64, t2: C64) -> Result<(C64, C64)> {
    check_times(t1, t2)?;
    let a = -t1 * (t2 - 1.0) * q1;
    let b = (t2 - 1.0) * (t2 - 1.0) * q2;
    // a = π − σ + 1, b = π − t2σ + t2²
    let sigma = (a - b) / (t2 - 1.0) + t2 + 1.0;
    let pi = a + sigma - 1.0;
    let disc = (sigma * sigma - 4.0 * pi).sqrt();
    label_roots((sigma + disc) / 2.0, (sigma - disc) / 2.0)
}

/// `(q1, q2, p1, p2)` and `(λ, μ, K)` at a point, the map being evaluated on
/// the given canonical values. `K` is obtained from `H` through the
/// time derivatives of `q` at fixed `λ`.
pub fn garnier_from_phase(p: &super::Params, x: &PhasePoint, t2: C64) -> Result<GarnierCoords> {
    let t1 = x.t1;
    let (l1, l2) = lambdas(x.q1, x.q2, t1, t2)?;
    let (h1, h2) = hamiltonians_eval(p, x)?;
    let mu = |l: C64| -> Result<C64> {
        if l == ONE || l == t2 {
            return Err(Error::DegenerateLambda(0.0));
        }
        Ok(x.q1 * x.p1 / (l - 1.0) + x.q2 * x.p2 / (l - t2))
    };
    let d = t2 - 1.0;
    let dq1_dt1 = -x.q1 / t1;
    let dq1_dt2 = -x.q1 / d;
    let dq2_dt2 = -(l1 + l2 - 2.0 * t2) / (d * d) - 2.0 * x.q2 / d;
    let k1 = -h1 / (t1 * t1) - x.p1 * dq1_dt1;
    let k2 = -h2 / (d * d) - x.p1 * dq1_dt2 - x.p2 * dq2_dt2;
    Ok(GarnierCoords { lambda1: l1, lambda2: l2, mu1: mu(l1)?, mu2: mu(l2)?, k1, k2, t1, t2 })
}

/// Evaluates an expansion at `(t1, t2)` and maps it to `(λ, μ, K)`.
pub fn to_garnier_coords(e: &SolutionExpansion, t1: C64, t2: C64) -> Result<GarnierCoords> {
    to_garnier_coords_within(e, t1, t2, TRUST_RADIUS)
}

pub fn to_garnier_coords_within(e: &SolutionExpansion, t1: C64, t2: C64, radius: f64) -> Result<GarnierCoords> {
    check_times(t1, t2)?;
    let s2 = s2_of_t2(t2)?;
    if t1.norm() > radius || s2.norm() > radius {
        return Err(Error::OutOfRegion(format!("(t1, s2) = ({t1}, {s2}) beyond trust radius {radius:e}")));
    }
    let qp = e.eval(t1, s2)?;
    garnier_from_phase(&e.params, &PhasePoint::new(qp, t1, s2), t2)
}

/// `(∂q/∂t1, ∂q/∂t2)` along the expansion for each coordinate, with
/// `∂/∂t2 = −(t2−1)^{-2} ∂/∂s2`.
pub fn time_derivatives(e: &SolutionExpansion, t1: C64, t2: C64) -> Result<[(C64, C64); 4]> {
    check_times(t1, t2)?;
    let s2 = s2_of_t2(t2)?;
    let ds2 = -ONE / ((t2 - 1.0) * (t2 - 1.0));
    let mut out = [(ZERO, ZERO); 4];
    for (slot, c) in out.iter_mut().zip(e.coords()) {
        *slot = (c.eval_partial(Var::T1, t1, s2)?, c.eval_partial(Var::S2, t1, s2)? * ds2);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceDiagnostic {
    /// `e^{-slope}` of the log-linear fit, an estimate of the radius.
    pub rho_estimate: f64,
    /// RMS residual of the fit in natural-log units.
    pub fit_quality: f64,
    /// Number of degrees that entered the fit.
    pub points: usize,
}

/// Fits `log max_{j+k=m} |c_jk|` against `m` over `m = 1..=order`, taking
/// the largest coefficient across all given series. Degrees whose
/// coefficients all vanish are skipped.
pub fn convergence_fit(series: &[&BiSeries]) -> ConvergenceDiagnostic {
    let order = series.iter().map(|s| s.order()).min().unwrap_or(0);
    let pts: Vec<(f64, f64)> = (1..=order)
        .filter_map(|m| {
            let v = series.iter().map(|s| s.max_abs_degree(m)).fold(0.0, f64::max);
            (v > 0.0 && v.is_finite()).then(|| (m as f64, v.ln()))
        })
        .collect();
    let n = pts.len();
    if n < 2 {
        return ConvergenceDiagnostic { rho_estimate: f64::NAN, fit_quality: f64::NAN, points: n };
    }
    let nf = n as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / nf, a.1 + p.1 / nf));
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let rss: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    ConvergenceDiagnostic { rho_estimate: (-slope).exp(), fit_quality: (rss / nf).sqrt(), points: n }
}

pub fn convergence_diagnostic(e: &SolutionExpansion) -> Result<ConvergenceDiagnostic> {
    if e.order < 5 {
        return Err(Error::InvalidArgument(format!("convergence fit needs order >= 5, got {}", e.order)));
    }
    let b = e.bases();
    Ok(convergence_fit(&[&b[0], &b[1], &b[2], &b[3]]))
}
