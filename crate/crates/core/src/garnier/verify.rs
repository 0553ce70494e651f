//! Point evaluation of the Hamiltonians and the series residual of the
//! Hamiltonian system.

use serde::Serialize;

use super::expand::SolutionExpansion;
use super::params::Params;
use super::ring::{Gradient, Ring, State};
use crate::complex::{C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::series::{Laurent, Var};

/// Canonical point `(q1, q2, p1, p2)` at times `(t1, s2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhasePoint {
    #[serde(with = "crate::complex::serde_cx")]
    pub q1: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub q2: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub p1: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub p2: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub t1: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub s2: C64,
}

impl PhasePoint {
    pub fn new(qp: [C64; 4], t1: C64, s2: C64) -> Self {
        PhasePoint { q1: qp[0], q2: qp[1], p1: qp[2], p2: qp[3], t1, s2 }
    }

    fn state(&self) -> Result<State<C64>> {
        if self.t1 == ZERO {
            return Err(Error::SingularTime("t1 = 0".into()));
        }
        Ok(State {
            q1: self.q1,
            q2: self.q2,
            p1: self.p1,
            p2: self.p2,
            t1: self.t1,
            s1: ONE / self.t1,
            s2: self.s2,
            one: ONE,
        })
    }
}

fn check_s2(s2: C64) -> Result<()> {
    if s2 == ZERO || s2 == ONE {
        return Err(Error::SingularTime(format!("s2 = {s2}")));
    }
    Ok(())
}

/// `(H1, H2)` at a point.
pub fn hamiltonians_eval(p: &Params, x: &PhasePoint) -> Result<(C64, C64)> {
    check_s2(x.s2)?;
    let st = x.state()?;
    let h1 = st.num1(p) * x.t1 * x.t1;
    let h2 = st.num2(p) / (x.s2 * (x.s2 - 1.0));
    Ok((h1, h2))
}

/// Hand-differentiated `(∂H1, ∂H2)` at a point, in the order `q1, q2, p1, p2`.
pub fn hamiltonian_gradients(p: &Params, x: &PhasePoint) -> Result<([C64; 4], [C64; 4])> {
    check_s2(x.s2)?;
    let st = x.state()?;
    let (f1, f2) = (x.t1 * x.t1, ONE / (x.s2 * (x.s2 - 1.0)));
    let flat = |g: Gradient<C64>, f: C64| [g.dq1 * f, g.dq2 * f, g.dp1 * f, g.dp2 * f];
    Ok((flat(st.grad1(p), f1), flat(st.grad2(p), f2)))
}

/// Central finite-difference gradients of [`hamiltonians_eval`].
pub fn hamiltonian_gradients_fd(p: &Params, x: &PhasePoint, h: f64) -> Result<([C64; 4], [C64; 4])> {
    let mut g1 = [ZERO; 4];
    let mut g2 = [ZERO; 4];
    for i in 0..4 {
        let bump = |d: f64| {
            let mut y = *x;
            let slot = match i {
                0 => &mut y.q1,
                1 => &mut y.q2,
                2 => &mut y.p1,
                _ => &mut y.p2,
            };
            *slot += d;
            hamiltonians_eval(p, &y)
        };
        let (hp, hm) = (bump(h)?, bump(-h)?);
        g1[i] = (hp.0 - hm.0) / (2.0 * h);
        g2[i] = (hp.1 - hm.1) / (2.0 * h);
    }
    Ok((g1, g2))
}

/// Outcome of substituting an expansion into the eight equations.
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    /// Largest coefficient of LHS − RHS over all equations and known degrees.
    pub max_abs: f64,
    /// `max_abs` relative to the coefficient scale of the equation it came from.
    pub relative: f64,
    /// Lowest total degree through which every equation is known exactly.
    pub precision: i32,
    /// Lowest total degree carrying a coefficient above `1e-9` relative, if any.
    pub first_failure: Option<i32>,
}

fn max_coeff(l: &Laurent) -> f64 {
    l.terms().iter().fold(0.0, |a, t| a.max(t.2.norm()))
}

fn equation_residual(lhs: &Laurent, rhs: &Laurent) -> (f64, f64, i32, Option<i32>) {
    let diff = lhs - rhs;
    let scale = max_coeff(lhs).max(max_coeff(rhs)).max(1.0);
    let prec = diff.precision().unwrap_or(i32::MIN);
    let mut worst = 0.0f64;
    let mut first: Option<i32> = None;
    for (j, k, c) in diff.terms() {
        worst = worst.max(c.norm());
        if c.norm() > 1e-9 * scale {
            first = Some(first.map_or(j + k, |f: i32| f.min(j + k)));
        }
    }
    (worst, worst / scale, prec, first)
}

/// Substitutes the truncated series into the original Hamiltonian system,
/// using the hand gradients over Laurent series with precision tracking.
pub fn residual(e: &SolutionExpansion) -> Residual {
    let cap = e.order as i32 + 8;
    let mono = |j, k| Laurent::exact(ONE, j, k, cap);
    let [q1, q2, p1, p2] = e.coords().map(Laurent::from_pole_series);
    let st = State {
        q1: q1.clone(),
        q2: q2.clone(),
        p1: p1.clone(),
        p2: p2.clone(),
        t1: mono(1, 0),
        s1: mono(-1, 0),
        s2: mono(0, 1),
        one: mono(0, 0),
    };
    let g1 = st.grad1(&e.params);
    let g2 = st.grad2(&e.params);
    let t1 = &st.t1;
    let s2m1 = st.s2.sub(&st.one);
    let th1 = |x: &Laurent| x.euler(Var::T1);
    let th2 = |x: &Laurent| s2m1.mul(&x.euler(Var::S2));
    let eqs = [
        (th1(&q1), t1.mul(&g1.dp1).scale(-ONE)),
        (th1(&q2), t1.mul(&g1.dp2).scale(-ONE)),
        (th1(&p1), t1.mul(&g1.dq1)),
        (th1(&p2), t1.mul(&g1.dq2)),
        (th2(&q1), g2.dp1.clone()),
        (th2(&q2), g2.dp2.clone()),
        (th2(&p1), g2.dq1.scale(-ONE)),
        (th2(&p2), g2.dq2.scale(-ONE)),
    ];
    let mut out = Residual { max_abs: 0.0, relative: 0.0, precision: i32::MAX, first_failure: None };
    for (lhs, rhs) in &eqs {
        let (a, rel, prec, first) = equation_residual(lhs, rhs);
        out.max_abs = out.max_abs.max(a);
        out.relative = out.relative.max(rel);
        out.precision = out.precision.min(prec);
        if let Some(f) = first {
            out.first_failure = Some(out.first_failure.map_or(f, |g| g.min(f)));
        }
    }
    out
}

/// Relative residual of the Hamiltonian system, see [`residual`].
pub fn residual_norm(e: &SolutionExpansion) -> f64 {
    residual(e).relative
}
