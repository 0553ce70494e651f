use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{CxJson, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::matrix::Matrix2;

/// Locations closer than this but not equal are rejected as colliding.
pub const COLLISION_TOL: f64 = 1e-10;

/// `coeff / (x − at)^order`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoleTerm {
    pub at: C64,
    pub order: u8,
    pub coeff: C64,
}

impl PoleTerm {
    pub fn new(at: C64, order: u8, coeff: C64) -> Self {
        PoleTerm { at, order, coeff }
    }
}

/// A rational function written as a sum of pole terms and a constant.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RationalFn {
    pub poles: Vec<PoleTerm>,
    pub constant: C64,
}

impl RationalFn {
    pub fn eval(&self, x: C64) -> C64 {
        self.poles
            .iter()
            .fold(self.constant, |acc, t| acc + t.coeff / (x - t.at).powi(t.order as i32))
    }

    pub fn derivative(&self, x: C64) -> C64 {
        self.poles.iter().fold(ZERO, |acc, t| {
            let n = t.order as i32;
            acc - t.coeff * n as f64 / (x - t.at).powi(n + 1)
        })
    }

    /// Coefficient of `(x − a)^{−order}` in the partial-fraction form.
    pub fn coefficient(&self, a: C64, order: u8) -> C64 {
        self.poles.iter().filter(|t| t.at == a && t.order == order).map(|t| t.coeff).sum()
    }

    pub fn locations(&self) -> Vec<C64> {
        let mut out: Vec<C64> = Vec::new();
        for t in &self.poles {
            if !out.contains(&t.at) {
                out.push(t.at);
            }
        }
        out
    }

    fn merged(mut self) -> Self {
        let mut out: Vec<PoleTerm> = Vec::new();
        for t in self.poles.drain(..) {
            match out.iter_mut().find(|u| u.at == t.at && u.order == t.order) {
                Some(u) => u.coeff += t.coeff,
                None => out.push(t),
            }
        }
        out.retain(|t| t.coeff != ZERO);
        RationalFn { poles: out, constant: self.constant }
    }

    fn to_json(&self) -> serde_json::Value {
        let poles: Vec<_> = self
            .poles
            .iter()
            .map(|t| serde_json::json!({"at": CxJson::from(t.at), "order": t.order, "coeff": CxJson::from(t.coeff)}))
            .collect();
        serde_json::json!({"poles": poles, "constant": CxJson::from(self.constant)})
    }
}

/// Partial fractions of `c / Π (x − a_i)^{m_i}` with distinct `a_i` and `m_i ≤ 2`.
pub fn partial_fractions(c: C64, factors: &[(C64, u8)]) -> Result<Vec<PoleTerm>> {
    for (i, (a, m)) in factors.iter().enumerate() {
        if *m == 0 || *m > 2 {
            return Err(Error::InvalidArgument(format!("pole order {m} unsupported")));
        }
        for (b, _) in &factors[i + 1..] {
            if (*a - *b).norm() < COLLISION_TOL {
                return Err(Error::CollidingSingularities(format!("{a} and {b}")));
            }
        }
    }
    let mut out = Vec::new();
    for (i, &(a, m)) in factors.iter().enumerate() {
        let others = || factors.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, f)| *f);
        let g = others().fold(c, |acc, (b, n)| acc / (a - b).powi(n as i32));
        out.push(PoleTerm::new(a, m, g));
        if m == 2 {
            let dlog: C64 = others().map(|(b, n)| -(n as f64) / (a - b)).sum();
            out.push(PoleTerm::new(a, 1, g * dlog));
        }
    }
    Ok(out)
}

/// `ψ'' + P(x) ψ' + Q(x) ψ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalODE {
    pub label: String,
    /// Name of the independent variable.
    pub variable: &'static str,
    /// How the variable relates to `x` of the full equation, if it differs.
    pub change_of_variable: Option<&'static str>,
    pub p: RationalFn,
    pub q: RationalFn,
    /// Named constants of the construction.
    pub constants: BTreeMap<&'static str, C64>,
}

impl RationalODE {
    pub fn new(label: impl Into<String>, variable: &'static str, p: RationalFn, q: RationalFn) -> Result<Self> {
        let (p, q) = (p.merged(), q.merged());
        let mut locs = p.locations();
        for a in q.locations() {
            if !locs.contains(&a) {
                locs.push(a);
            }
        }
        for (i, a) in locs.iter().enumerate() {
            for b in &locs[i + 1..] {
                if (*a - *b).norm() < COLLISION_TOL {
                    return Err(Error::CollidingSingularities(format!("{a} and {b}")));
                }
            }
        }
        for t in p.poles.iter().chain(q.poles.iter()) {
            if t.order > 2 {
                return Err(Error::InvalidArgument(format!("pole of order {} at {}", t.order, t.at)));
            }
        }
        Ok(RationalODE {
            label: label.into(),
            variable,
            change_of_variable: None,
            p,
            q,
            constants: BTreeMap::new(),
        })
    }

    pub fn with_constant(mut self, name: &'static str, v: C64) -> Self {
        self.constants.insert(name, v);
        self
    }

    pub fn with_change(mut self, how: &'static str) -> Self {
        self.change_of_variable = Some(how);
        self
    }

    /// Finite singular points.
    pub fn singular_points(&self) -> Vec<C64> {
        let mut locs = self.p.locations();
        for a in self.q.locations() {
            if !locs.contains(&a) {
                locs.push(a);
            }
        }
        locs
    }

    pub fn nearest_singularity(&self, x: C64) -> Option<(C64, f64)> {
        self.singular_points()
            .into_iter()
            .map(|a| (a, (x - a).norm()))
            .min_by(|u, v| u.1.total_cmp(&v.1))
    }

    fn check_regular(&self, x: C64) -> Result<()> {
        match self.nearest_singularity(x) {
            Some((a, d)) if d < 1e-14 * (1.0 + a.norm()) => Err(Error::EvalAtSingularity(format!("{a}"))),
            _ => Ok(()),
        }
    }

    pub fn eval_pq(&self, x: C64) -> Result<(C64, C64)> {
        self.check_regular(x)?;
        Ok((self.p.eval(x), self.q.eval(x)))
    }

    /// Companion matrix `[[0, 1], [−Q, −P]]` of `(ψ, ψ')`.
    pub fn as_first_order(&self, x: C64) -> Result<Matrix2> {
        let (p, q) = self.eval_pq(x)?;
        Ok(Matrix2::new(ZERO, ONE, -q, -p))
    }

    /// `ψ'' + Pψ' + Qψ` and the sum of the magnitudes of its three terms.
    pub fn residual(&self, x: C64, psi: C64, dpsi: C64, d2psi: C64) -> Result<(C64, f64)> {
        let (p, q) = self.eval_pq(x)?;
        let terms = [d2psi, p * dpsi, q * psi];
        Ok((terms.iter().sum(), terms.iter().map(|t| t.norm()).sum()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let consts: BTreeMap<&str, CxJson> = self.constants.iter().map(|(k, v)| (*k, CxJson::from(*v))).collect();
        serde_json::json!({
            "label": self.label,
            "variable": self.variable,
            "change_of_variable": self.change_of_variable,
            "P": self.p.to_json(),
            "Q": self.q.to_json(),
            "constants": consts,
        })
    }
}

impl Serialize for RationalODE {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
