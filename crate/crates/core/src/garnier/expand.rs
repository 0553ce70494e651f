//! Order-by-order expansion of the special solutions.
//!
//! Writing each coordinate as `t1^a s2^b · U` with the profile exponents of
//! the solution turns the Hamiltonian system into
//! `θ1 U = F(U, t1, s2)` and `(s2−1) θ2 U = G(U, t1, s2)` with polynomial
//! right-hand sides. The coefficients of total degree `m` then solve, for
//! each `(j, k)` with `j + k = m`, the stacked linear system
//! `(j − J1) U_jk = r1_jk`, `(k − J2) U_jk = r2_jk`.

use serde::Serialize;
use serde_json::json;

use super::params::Params;
use super::poly::{Poly, NVARS, S2, T1};
use super::ring::{Ring, State};
use super::solutions::{Coord, SolutionId};
use crate::complex::{C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::linalg::{least_squares, solve_square, Dense};
use crate::series::{BiSeries, PoleSeries};

/// How the per-degree linear systems are solved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SolveStrategy {
    /// All eight equations, least squares.
    #[default]
    Stacked,
    /// Only the t1 block when `j > 0`, otherwise only the s2 block.
    SquareBlock,
}

/// Relative size below which a spurious negative power is treated as round-off.
const CANCEL_TOL: f64 = 1e-12;
/// Pivot threshold for the per-degree solves.
const RCOND: f64 = 1e-13;

/// Polynomial right-hand sides of the depoled system.
#[derive(Clone, Debug)]
pub struct DepoledSystem {
    pub id: SolutionId,
    /// `θ1 U_v = f[v]`
    pub f: [Poly; 4],
    /// `(s2−1) θ2 U_v = g[v]`
    pub g: [Poly; 4],
}

fn poly_state() -> State<Poly> {
    State {
        q1: Poly::var(0),
        q2: Poly::var(1),
        p1: Poly::var(2),
        p2: Poly::var(3),
        t1: Poly::var(T1),
        s1: Poly::var_pow(T1, -1),
        s2: Poly::var(S2),
        one: Poly::constant(ONE),
    }
}

fn clean(p: Poly, what: &str) -> Result<Poly> {
    let scale = p.max_abs();
    let bad: Vec<_> = p
        .negative_terms()
        .into_iter()
        .filter(|(_, c)| c.norm() > CANCEL_TOL * scale)
        .collect();
    if let Some((e, c)) = bad.first() {
        return Err(Error::InvalidArgument(format!(
            "{what}: depoled right-hand side keeps the term {c}·{e:?}"
        )));
    }
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        if e.iter().all(|&x| x >= 0) {
            out = out.add(&Poly::monomial(*c, *e));
        }
    }
    Ok(out)
}

impl DepoledSystem {
    pub fn new(p: &Params, id: SolutionId) -> Result<Self> {
        let st = poly_state();
        let n1 = st.num1(p);
        let n2 = st.num2(p);
        let t1 = Poly::var(T1);
        // coordinate index order q1, q2, p1, p2; conjugate of q_i is p_i
        let f_orig = [
            t1.mul(&n1.diff(2)).scale(-ONE),
            t1.mul(&n1.diff(3)).scale(-ONE),
            t1.mul(&n1.diff(0)),
            t1.mul(&n1.diff(1)),
        ];
        let g_orig = [n2.diff(2), n2.diff(3), n2.diff(0).scale(-ONE), n2.diff(1).scale(-ONE)];
        let prof = id.profile();
        let s2m1 = Poly::var(S2).sub(&Poly::constant(ONE));
        let mut f: [Poly; 4] = Default::default();
        let mut g: [Poly; 4] = Default::default();
        for v in 0..4 {
            let (a, b) = prof[v];
            let u = Poly::var(v);
            let fv = f_orig[v]
                .rescale_coordinates(&prof)
                .shift_times(-a, -b)
                .sub(&u.scale(ONE * a as f64));
            let gv = g_orig[v]
                .rescale_coordinates(&prof)
                .shift_times(-a, -b)
                .sub(&s2m1.mul(&u).scale(ONE * b as f64));
            f[v] = clean(fv, Coord::ALL[v].name())?;
            g[v] = clean(gv, Coord::ALL[v].name())?;
        }
        Ok(DepoledSystem { id, f, g })
    }

    fn jacobian(polys: &[Poly; 4], u0: &[C64; 4], sign: f64) -> [[C64; 4]; 4] {
        let mut j = [[ZERO; 4]; 4];
        for v in 0..4 {
            for w in 0..4 {
                j[v][w] = polys[v].diff(w).eval_at_origin(u0) * sign;
            }
        }
        j
    }

    /// Jacobians `(J1, J2)` of the t1 and s2 blocks at the origin.
    pub fn jacobians(&self, u0: &[C64; 4]) -> ([[C64; 4]; 4], [[C64; 4]; 4]) {
        // 1/(s2−1) = −1 at the origin
        (Self::jacobian(&self.f, u0, 1.0), Self::jacobian(&self.g, u0, -1.0))
    }

    /// Largest order-0 defect of the seed, relative to the coefficient scale.
    pub fn seed_defect(&self, u0: &[C64; 4]) -> f64 {
        let scale = 1.0 + u0.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        self.f
            .iter()
            .chain(self.g.iter())
            .map(|p| p.eval_at_origin(u0).norm() / (scale * (1.0 + p.max_abs())))
            .fold(0.0, f64::max)
    }

    /// Evaluates both right-hand sides at a numeric point, `θ2 U` included.
    pub fn eval(&self, u: &[C64; 4], t1: C64, s2: C64) -> ([C64; 4], [C64; 4]) {
        let x: [C64; NVARS] = [u[0], u[1], u[2], u[3], t1, s2];
        let f = std::array::from_fn(|v| self.f[v].eval(&x));
        let g = std::array::from_fn(|v| self.g[v].eval(&x) / (s2 - 1.0));
        (f, g)
    }
}

/// Truncated expansion of a special solution.
#[derive(Clone, Debug)]
pub struct SolutionExpansion {
    pub id: SolutionId,
    pub params: Params,
    pub order: usize,
    pub q1: PoleSeries,
    pub q2: PoleSeries,
    pub p1: PoleSeries,
    pub p2: PoleSeries,
    /// Largest least-squares residual met in the per-degree solves.
    pub solve_defect: f64,
}

impl SolutionExpansion {
    pub fn coords(&self) -> [&PoleSeries; 4] {
        [&self.q1, &self.q2, &self.p1, &self.p2]
    }

    pub fn coord(&self, c: Coord) -> &PoleSeries {
        self.coords()[c.index()]
    }

    pub fn coord_mut(&mut self, c: Coord) -> &mut PoleSeries {
        match c {
            Coord::Q1 => &mut self.q1,
            Coord::Q2 => &mut self.q2,
            Coord::P1 => &mut self.p1,
            Coord::P2 => &mut self.p2,
        }
    }

    /// Holomorphic parts `U`.
    pub fn bases(&self) -> [BiSeries; 4] {
        self.coords().map(|c| c.base.clone())
    }

    /// Values of `(q1, q2, p1, p2)` at a point.
    pub fn eval(&self, t1: C64, s2: C64) -> Result<[C64; 4]> {
        Ok([
            self.q1.eval(t1, s2)?,
            self.q2.eval(t1, s2)?,
            self.p1.eval(t1, s2)?,
            self.p2.eval(t1, s2)?,
        ])
    }

    /// Copy with every coefficient above total degree `m` set to zero.
    pub fn zero_above(&self, m: usize) -> Self {
        let mut out = self.clone();
        for c in Coord::ALL {
            let s = out.coord_mut(c);
            let kept = s.base.truncated(m);
            let mut b = BiSeries::zeros(self.order);
            for (j, k, v) in kept.terms() {
                b.set(j, k, v);
            }
            s.base = b;
        }
        out
    }

    pub fn to_json(&self, residual: f64) -> serde_json::Value {
        json!({
            "solution": self.id.index(),
            "order": self.order,
            "params": self.params,
            "q1": self.q1.to_json(),
            "q2": self.q2.to_json(),
            "p1": self.p1.to_json(),
            "p2": self.p2.to_json(),
            "residual": residual,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionOptions {
    pub order: usize,
    #[serde(skip)]
    pub strategy: SolveStrategy,
    /// Override of the order-0 constants (testing perturbed or literal seeds).
    #[serde(skip)]
    pub seed: Option<[C64; 4]>,
}

impl ExpansionOptions {
    pub fn order(order: usize) -> Self {
        ExpansionOptions { order, strategy: SolveStrategy::Stacked, seed: None }
    }
}

pub fn expand_solution(p: &Params, id: SolutionId, order: usize) -> Result<SolutionExpansion> {
    p.require_generic()?;
    expand_with(p, id, &ExpansionOptions::order(order))
}

/// Expansion without the genericity gate, with explicit options.
pub fn expand_with(p: &Params, id: SolutionId, opts: &ExpansionOptions) -> Result<SolutionExpansion> {
    let n = opts.order;
    if n < 1 {
        return Err(Error::InvalidArgument("expansion order must be at least 1".into()));
    }
    let sys = DepoledSystem::new(p, id)?;
    let u0 = opts.seed.unwrap_or_else(|| id.seed(p));
    let defect = sys.seed_defect(&u0);
    if defect > 1e-10 {
        return Err(Error::InvalidArgument(format!(
            "order-0 constants of solution {id} violate the equations (defect {defect:.3e})"
        )));
    }
    let (j1, j2) = sys.jacobians(&u0);
    let mut u: [BiSeries; 4] = std::array::from_fn(|v| BiSeries::constant(u0[v], n));
    let inv_s2m1 = (&BiSeries::var(crate::series::Var::S2, n) - &BiSeries::one(n)).inverse()?;
    let mut worst = 0.0f64;
    for m in 1..=n {
        let cur: [BiSeries; 4] = std::array::from_fn(|v| u[v].truncated(m));
        let r1: Vec<BiSeries> = sys.f.iter().map(|f| f.eval_series(&cur)).collect();
        let r2: Vec<BiSeries> = sys
            .g
            .iter()
            .map(|g| &g.eval_series(&cur) * &inv_s2m1.truncated(m))
            .collect();
        for j in 0..=m {
            let k = m - j;
            let rhs1: Vec<C64> = r1.iter().map(|s| s.get(j, k)).collect();
            let rhs2: Vec<C64> = r2.iter().map(|s| s.get(j, k)).collect();
            let x = solve_degree(&j1, &j2, j, k, &rhs1, &rhs2, opts.strategy, &mut worst)
                .map_err(|e| match e {
                    Error::NonGenericParams(msg) => Error::NonGenericParams(format!(
                        "solution {id}, coefficient t1^{j} s2^{k}: {msg}"
                    )),
                    other => other,
                })?;
            for v in 0..4 {
                u[v].set(j, k, x[v]);
            }
        }
    }
    let prof = id.profile();
    let [b0, b1, b2, b3] = u;
    let mk = |b: BiSeries, v: usize| -> Result<PoleSeries> {
        Ok(PoleSeries::from_exponents(b.check_finite()?, prof[v].0, prof[v].1))
    };
    let out = SolutionExpansion {
        id,
        params: *p,
        order: n,
        q1: mk(b0, 0)?,
        q2: mk(b1, 1)?,
        p1: mk(b2, 2)?,
        p2: mk(b3, 3)?,
        solve_defect: worst,
    };
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn solve_degree(
    j1: &[[C64; 4]; 4],
    j2: &[[C64; 4]; 4],
    j: usize,
    k: usize,
    rhs1: &[C64],
    rhs2: &[C64],
    strategy: SolveStrategy,
    worst: &mut f64,
) -> Result<Vec<C64>> {
    let block = |jac: &[[C64; 4]; 4], e: usize| {
        let mut d = Dense::zeros(4, 4);
        for v in 0..4 {
            for w in 0..4 {
                let id = if v == w { ONE * e as f64 } else { ZERO };
                d.set(v, w, id - jac[v][w]);
            }
        }
        d
    };
    match strategy {
        SolveStrategy::Stacked => {
            let (a, b) = (block(j1, j), block(j2, k));
            let mut m = Dense::zeros(8, 4);
            for v in 0..4 {
                for w in 0..4 {
                    m.set(v, w, a.at(v, w));
                    m.set(v + 4, w, b.at(v, w));
                }
            }
            let rhs: Vec<C64> = rhs1.iter().chain(rhs2.iter()).copied().collect();
            let (x, resid) = least_squares(&m, &rhs, RCOND)?;
            let scale = 1.0 + rhs.iter().fold(0.0f64, |a, z| a.max(z.norm()));
            *worst = worst.max(resid / scale);
            Ok(x)
        }
        SolveStrategy::SquareBlock => {
            if j > 0 {
                solve_square(&block(j1, j), rhs1, RCOND)
            } else {
                solve_square(&block(j2, k), rhs2, RCOND)
            }
        }
    }
}
