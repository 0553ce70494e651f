use std::fmt;

use serde::Serialize;

use super::rational::{partial_fractions, PoleTerm, RationalFn, RationalODE};
use crate::complex::{cpow, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::garnier::{Params, SolutionId};
use crate::specfun::{GaussParams, KummerParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LimitStage {
    First,
    Second,
    Third,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LimitEquationId {
    pub stage: LimitStage,
    pub solution: SolutionId,
}

impl LimitEquationId {
    pub fn new(stage: LimitStage, solution: SolutionId) -> Self {
        LimitEquationId { stage, solution }
    }

    /// Every stage/solution pair with a construction.
    pub fn implemented() -> Vec<LimitEquationId> {
        use LimitStage::*;
        let mut out = Vec::new();
        for s in SolutionId::all() {
            let stages: &[LimitStage] = match s.index() {
                1 | 5 => &[First, Second, Third],
                2 => &[Second],
                3 | 4 => &[First],
                _ => &[Third],
            };
            out.extend(stages.iter().map(|&st| LimitEquationId::new(st, s)));
        }
        out
    }
}

impl fmt::Display for LimitEquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.stage, self.solution)
    }
}

/// Hypergeometric data behind the closed-form monodromy of a solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ConnectionParams {
    Gauss(GaussParams),
    Kummer(KummerParams),
}

/// Gauss parameters for solutions (1)–(4), Kummer parameters for (5)–(8).
/// Solution (4) uses the assignment consistent with its local exponents,
/// `(ν+α2, ν+α2+α∞, 1−α0+α2)`.
pub fn connection_params(id: SolutionId, p: &Params) -> ConnectionParams {
    let (a0, a1, a2, ai, nu) = (p.alpha0, p.alpha1, p.alpha2, p.alpha_inf, p.nu);
    let g = |a, b, c| ConnectionParams::Gauss(GaussParams::new(a, b, c));
    let k = |a: C64| ConnectionParams::Kummer(KummerParams::new(a, 2.0 * a + a1));
    match id.index() {
        1 => g(nu, ONE - a0 - a2 - nu, ONE - a0),
        2 => g(nu + a1, nu + ai, ONE - a0),
        3 => g(nu, nu + ai, ONE - a0 - a2),
        4 => g(nu + a2, nu + a2 + ai, ONE - a0 + a2),
        5 => k(nu),
        6 => k(nu + ai),
        7 => k(nu + a2),
        _ => k(nu + a2 + ai),
    }
}

fn pf(poles: Vec<PoleTerm>, constant: C64) -> RationalFn {
    RationalFn { poles, constant }
}

/// Equation with regular singular points `0, 1, ∞` and the given exponents.
fn papperitz(label: String, var: &'static str, e0: [C64; 2], e1: [C64; 2], einf: [C64; 2]) -> Result<RationalODE> {
    let p = pf(
        vec![PoleTerm::new(ZERO, 1, ONE - e0[0] - e0[1]), PoleTerm::new(ONE, 1, ONE - e1[0] - e1[1])],
        ZERO,
    );
    let mut q = partial_fractions(einf[0] * einf[1], &[(ZERO, 1), (ONE, 1)])?;
    q.extend(partial_fractions(-e0[0] * e0[1], &[(ZERO, 2), (ONE, 1)])?);
    q.extend(partial_fractions(e1[0] * e1[1], &[(ZERO, 1), (ONE, 2)])?);
    RationalODE::new(label, var, p, pf(q, ZERO))
}

fn gauss_equation(label: String, var: &'static str, g: &GaussParams) -> Result<RationalODE> {
    let GaussParams { alpha: a, beta: b, gamma: c } = *g;
    papperitz(label, var, [ZERO, ONE - c], [ZERO, c - a - b], [a, b])
}

fn kummer_equation(label: String, k: &KummerParams) -> Result<RationalODE> {
    let p = pf(vec![PoleTerm::new(ZERO, 1, k.gamma)], -ONE);
    let q = pf(vec![PoleTerm::new(ZERO, 1, -k.alpha)], ZERO);
    Ok(RationalODE::new(label, "z", p, q)?
        .with_constant("alpha", k.alpha)
        .with_constant("gamma", k.gamma))
}

const XI: &str = "x = t2·ξ";
const Z: &str = "x − 1 = η·t1/z";
const Z_GAUGED: &str = "x − 1 = η·t1/z, ψ = (z/η)^ν·ψ3";

pub fn limit_equation(id: LimitEquationId, p: &Params) -> Result<RationalODE> {
    use LimitStage::*;
    let (a0, a1, a2, ai, nu) = (p.alpha0, p.alpha1, p.alpha2, p.alpha_inf, p.nu);
    let label = id.to_string();
    let kappa = p.kappa();
    let unsupported = || Err(Error::UnsupportedLimit(label.clone()));
    let hyper = connection_params(id.solution, p);
    match (id.stage, id.solution.index()) {
        (First, 1) => {
            let b0 = (ai + a1) / ai;
            let k2 = nu * (ONE - a0 - a2 - nu);
            let m2 = -nu * a1 / ai;
            let pp = pf(
                vec![
                    PoleTerm::new(ZERO, 1, 2.0 - a0 - a2),
                    PoleTerm::new(ONE, 1, ONE - a1),
                    PoleTerm::new(b0, 1, -ONE),
                ],
                ZERO,
            );
            let mut q = partial_fractions(kappa - k2, &[(ZERO, 1), (ONE, 1)])?;
            q.push(PoleTerm::new(ZERO, 2, k2));
            q.extend(partial_fractions(m2, &[(ZERO, 1), (ONE, 1), (b0, 1)])?);
            Ok(RationalODE::new(label, "x", pp, pf(q, ZERO))?
                .with_constant("b0", b0)
                .with_constant("k2", k2)
                .with_constant("m2", m2))
        }
        (First, 5) => {
            let b0 = -(a0 + a2) / ai;
            let k1 = nu * (nu + a1 - 1.0);
            let m1 = nu * (a0 + a2) / ai;
            let pp = pf(
                vec![
                    PoleTerm::new(ZERO, 1, ONE - a0 - a2),
                    PoleTerm::new(ONE, 1, 2.0 - a1),
                    PoleTerm::new(b0, 1, -ONE),
                ],
                ZERO,
            );
            let mut q = partial_fractions(kappa, &[(ZERO, 1), (ONE, 1)])?;
            q.extend(partial_fractions(-k1, &[(ZERO, 1), (ONE, 2)])?);
            q.extend(partial_fractions(m1, &[(ZERO, 1), (ONE, 1), (b0, 1)])?);
            Ok(RationalODE::new(label, "x", pp, pf(q, ZERO))?
                .with_constant("b0", b0)
                .with_constant("k1", k1)
                .with_constant("m1", m1))
        }
        (First, 3) => match hyper {
            ConnectionParams::Gauss(g) => gauss_equation(label, "x", &g),
            _ => unreachable!(),
        },
        (First, 4) => papperitz(label, "x", [a2, a0], [ZERO, a1], [nu, nu + ai]),
        (Second, 1) | (Second, 2) => match hyper {
            ConnectionParams::Gauss(g) => {
                let ode = gauss_equation(label, "ξ", &g)?.with_change(XI);
                Ok(if id.solution.index() == 1 { ode.with_constant("k2", g.alpha * g.beta) } else { ode })
            }
            _ => unreachable!(),
        },
        (Second, 5) => {
            let xl = a0 / (a0 + a2);
            let pp = pf(
                vec![
                    PoleTerm::new(ZERO, 1, ONE - a0),
                    PoleTerm::new(ONE, 1, ONE - a2),
                    PoleTerm::new(xl, 1, -ONE),
                ],
                ZERO,
            );
            Ok(RationalODE::new(label, "ξ", pp, RationalFn::default())?
                .with_change(XI)
                .with_constant("xi_lambda2", xl))
        }
        (Third, 1) => {
            let pp = pf(vec![PoleTerm::new(ZERO, 1, ONE + a1), PoleTerm::new(a1, 1, -ONE)], -ONE);
            Ok(RationalODE::new(label, "z", pp, RationalFn::default())?.with_change(Z))
        }
        (Third, 5..=8) => match hyper {
            ConnectionParams::Kummer(k) => Ok(kummer_equation(label, &k)?.with_change(Z_GAUGED)),
            _ => unreachable!(),
        },
        _ => unsupported(),
    }
}

/// `scale · Π (x − a)^e · exp(rate·x)` with principal powers.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSolution {
    pub factors: Vec<(C64, C64)>,
    pub rate: C64,
}

impl ClosedSolution {
    pub fn constant() -> Self {
        ClosedSolution { factors: Vec::new(), rate: ZERO }
    }

    /// `(ψ, ψ', ψ'')`.
    pub fn eval(&self, x: C64) -> (C64, C64, C64) {
        let psi = self.factors.iter().fold((self.rate * x).exp(), |acc, (a, e)| acc * cpow(x - a, *e));
        let l: C64 = self.rate + self.factors.iter().map(|(a, e)| e / (x - a)).sum::<C64>();
        let dl: C64 = -self.factors.iter().map(|(a, e)| e / ((x - a) * (x - a))).sum::<C64>();
        (psi, psi * l, psi * (l * l + dl))
    }
}

/// The printed general solutions, one basis element per entry.
pub fn closed_form_solutions(id: LimitEquationId, p: &Params) -> Result<Vec<ClosedSolution>> {
    use LimitStage::*;
    let (a0, a1, a2, nu) = (p.alpha0, p.alpha1, p.alpha2, p.nu);
    let sol = |factors: Vec<(C64, C64)>, rate: C64| ClosedSolution { factors, rate };
    match (id.stage, id.solution.index()) {
        (First, 1) => Ok(vec![
            sol(vec![(ZERO, -nu)], ZERO),
            sol(vec![(ZERO, a0 + a2 + nu - 1.0), (ONE, a1)], ZERO),
        ]),
        (Third, 1) => Ok(vec![sol(vec![(ZERO, -a1)], ONE), ClosedSolution::constant()]),
        (First, 5) => Ok(vec![
            sol(vec![(ONE, -nu)], ZERO),
            sol(vec![(ZERO, a0 + a2), (ONE, nu + a1 - 1.0)], ZERO),
        ]),
        (Second, 5) => Ok(vec![ClosedSolution::constant(), sol(vec![(ZERO, a0), (ONE, a2)], ZERO)]),
        _ => Err(Error::UnsupportedLimit(format!("no elementary general solution for {id}"))),
    }
}
