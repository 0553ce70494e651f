//! End-to-end workflows shared by the command line, the benches and the
//! acceptance tests.

use serde::Serialize;

use crate::complex::{exp_2pii, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::garnier::{expand_solution, lambdas, to_garnier_coords, GarnierCoords, ParamSampler, Params, SolutionExpansion, SolutionId};
use crate::matrix::Matrix2;
use crate::monodromy::{
    closed_form_monodromy, numeric_monodromy, numeric_monodromy_with, LoopPath, Tolerances,
};
use crate::ode::{
    connection_params, lg2_coefficients, limit_equation, local_exponents, ConnectionParams,
    LimitEquationId, LimitStage, Point, RationalODE,
};
use crate::par;
use crate::specfun::{gauss_monodromy_matrices, kummer_monodromy_matrices, GENERICITY_MARGIN};

/// True when every solution's Gauss or Kummer data is generic.
pub fn connections_generic(p: &Params) -> bool {
    SolutionId::all().all(|id| match connection_params(id, p) {
        ConnectionParams::Gauss(g) => g.check_generic(GENERICITY_MARGIN).is_ok(),
        ConnectionParams::Kummer(k) => k.check_generic(GENERICITY_MARGIN).is_ok(),
    })
}

/// Seeded generic parameter tuple with generic connection data.
pub fn sample_params(seed: u64) -> Result<Params> {
    ParamSampler::default().sample_with(seed, connections_generic)
}

/// Expansions of all eight solutions, in solution order.
pub fn expand_all(p: &Params, order: usize) -> Vec<Result<SolutionExpansion>> {
    let ids: Vec<SolutionId> = SolutionId::all().collect();
    par::map(&ids, |id| expand_solution(p, *id, order))
}

/// Closed-form monodromy of a limit equation, as displayed with its derivation.
pub fn limit_closed_monodromy(id: LimitEquationId, p: &Params) -> Result<Vec<(&'static str, Matrix2)>> {
    use LimitStage::*;
    let (a0, a1, a2, ai, nu) = (p.alpha0, p.alpha1, p.alpha2, p.alpha_inf, p.nu);
    let d = |a: C64, b: C64| Matrix2::diag(exp_2pii(a), exp_2pii(b));
    let gauss = |scale0: C64| -> Result<Vec<(&'static str, Matrix2)>> {
        let ConnectionParams::Gauss(g) = connection_params(id.solution, p) else { unreachable!() };
        let m = gauss_monodromy_matrices(&g)?;
        let s = exp_2pii(scale0);
        Ok(vec![("M0", m.m0.scale(s)), ("M1", m.m1), ("Minf", m.minf.scale(ONE / s))])
    };
    match (id.stage, id.solution.index()) {
        (First, 1) => Ok(vec![
            ("M0", d(-nu, a0 + a2 + nu)),
            ("M1", d(ZERO, a1)),
            ("Minf", d(nu, nu + ai)),
            ("Mb0", Matrix2::IDENTITY),
        ]),
        (First, 5) => Ok(vec![
            ("M0", d(ZERO, a0 + a2)),
            ("M1", d(-nu, nu + a1)),
            ("Minf", d(nu, nu + ai)),
            ("Mb0", Matrix2::IDENTITY),
        ]),
        (Second, 5) => Ok(vec![
            ("M0", d(ZERO, a0)),
            ("M1", d(ZERO, a2)),
            ("Minf", d(ZERO, -a0 - a2)),
            ("Mxi", Matrix2::IDENTITY),
        ]),
        (Third, 1) => Ok(vec![("M0", d(ZERO, -a1)), ("Malpha1", Matrix2::IDENTITY)]),
        (Second, 1) | (Second, 2) | (First, 3) => gauss(ZERO),
        (First, 4) => gauss(a2),
        (Third, 5..=8) => {
            let ConnectionParams::Kummer(k) = connection_params(id.solution, p) else { unreachable!() };
            Ok(vec![("M0", kummer_monodromy_matrices(&k)?.m0)])
        }
        _ => Err(Error::UnsupportedLimit(id.to_string())),
    }
}

/// Points matching the labels of [`limit_closed_monodromy`]; `None` is infinity.
pub fn limit_loop_points(ode: &RationalODE, labels: &[&str]) -> Vec<Option<C64>> {
    labels
        .iter()
        .map(|l| match *l {
            "M0" => Some(ZERO),
            "M1" => Some(ONE),
            "Minf" => None,
            "Mb0" => Some(ode.constants["b0"]),
            "Mxi" => Some(ode.constants["xi_lambda2"]),
            "Malpha1" => ode.singular_points().into_iter().find(|s| *s != ZERO),
            _ => unreachable!("unknown label {l}"),
        })
        .collect()
}

/// Numeric loops around the given points from a common base (or from the
/// circle itself when `base` is `None`), transported concurrently.
pub fn numeric_loops(ode: &RationalODE, points: &[Option<C64>], base: Option<C64>) -> Result<Vec<Matrix2>> {
    let loops: Vec<Result<LoopPath>> = points
        .iter()
        .map(|pt| match pt {
            Some(c) => LoopPath::default_for(ode, *c, base),
            None => Ok(LoopPath::default_infinity(ode, base)),
        })
        .collect();
    let loops: Vec<LoopPath> = loops.into_iter().collect::<Result<_>>()?;
    par::map(&loops, |l| numeric_monodromy(ode, l)).into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FullEquationCheck {
    pub coords: GarnierCoords,
    /// Largest deviation of the local exponents at `0, t2, λ1, λ2, ∞`.
    pub exponent_deviation: f64,
    /// `max ‖M − I‖` over loops around `λ1` and `λ2`.
    pub apparent_deviation: f64,
    #[serde(with = "crate::complex::serde_cx")]
    pub trace_numeric: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub trace_closed: C64,
}

/// Builds the full equation from an expansion at `(t1, t2)` and compares
/// exponents and the loop enclosing `0` and `t2` with the closed form.
pub fn full_equation_check(e: &SolutionExpansion, t1: C64, t2: C64) -> Result<FullEquationCheck> {
    let p = &e.params;
    let g = to_garnier_coords(e, t1, t2)?;
    let ode = lg2_coefficients(&g, p)?;
    let want: [(Point, [C64; 2]); 5] = [
        (Point::Finite(ZERO), [ZERO, p.alpha0]),
        (Point::Finite(t2), [ZERO, p.alpha2]),
        (Point::Finite(g.lambda1), [ZERO, C64::new(2.0, 0.0)]),
        (Point::Finite(g.lambda2), [ZERO, C64::new(2.0, 0.0)]),
        (Point::Infinity, [p.nu, p.nu + p.alpha_inf]),
    ];
    let mut exponent_deviation = 0.0f64;
    for (pt, w) in want {
        let got = local_exponents(&ode, pt)?;
        let dev = [(0, 0), (1, 1)]
            .iter()
            .map(|(i, j)| (got[*i] - w[*j]).norm())
            .fold(0.0, f64::max)
            .min([(0, 1), (1, 0)].iter().map(|(i, j)| (got[*i] - w[*j]).norm()).fold(0.0, f64::max));
        exponent_deviation = exponent_deviation.max(dev);
    }
    let apparent: Vec<Matrix2> = numeric_loops(&ode, &[Some(g.lambda1), Some(g.lambda2)], None)?;
    let apparent_deviation = apparent.iter().map(|m| m.dist_identity()).fold(0.0, f64::max);
    let others = [ONE, g.lambda1, g.lambda2].iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if others < 4.0 * t2.norm() {
        return Err(Error::CollidingSingularities("t2 is not separated from the other singular points".into()));
    }
    let outer = LoopPath::around(ZERO, 0.5 * others);
    let m = numeric_monodromy_with(&ode, &outer, &Tolerances::default())?;
    let t = closed_form_monodromy(p, e.id)?;
    Ok(FullEquationCheck {
        coords: g,
        exponent_deviation,
        apparent_deviation,
        trace_numeric: m.trace(),
        trace_closed: (t.mt2 * t.m0).trace(),
    })
}

/// `(λ1, λ2)` of an expansion at `(t1, t2)`, exposed for diagnostics.
pub fn lambdas_of(e: &SolutionExpansion, t1: C64, t2: C64) -> Result<(C64, C64)> {
    let s2 = t2 / (t2 - 1.0);
    let v = e.eval(t1, s2)?;
    lambdas(v[0], v[1], t1, t2)
}

/// Limit equation paired with its closed-form matrices and loop points.
pub fn limit_setup(id: LimitEquationId, p: &Params) -> Result<(RationalODE, Vec<(&'static str, Matrix2)>, Vec<Option<C64>>)> {
    let ode = limit_equation(id, p)?;
    let closed = limit_closed_monodromy(id, p)?;
    let labels: Vec<&str> = closed.iter().map(|c| c.0).collect();
    let pts = limit_loop_points(&ode, &labels);
    Ok((ode, closed, pts))
}
