//! Closed-form monodromy tuples assembled from Gauss and Kummer data.

use serde::Serialize;

use crate::complex::{exp_2pii, C64, ONE};
use crate::error::Result;
use crate::garnier::{Params, SolutionId};
use crate::matrix::Matrix2;
use crate::ode::{connection_params, ConnectionParams};
use crate::specfun::{gauss_connection_matrices, kummer_connection_matrix, kummer_stokes_matrices};

/// Which version of a displayed tuple to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TupleVariant {
    /// Tuples satisfying their cyclic relation.
    #[default]
    Consistent,
    /// The tuples exactly as displayed, including the two that fail it.
    AsPrinted,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyTuple {
    pub solution: SolutionId,
    #[serde(rename = "M0")]
    pub m0: Matrix2,
    #[serde(rename = "Mt2")]
    pub mt2: Matrix2,
    #[serde(rename = "M1")]
    pub m1: Matrix2,
    #[serde(rename = "Minf")]
    pub minf: Matrix2,
    #[serde(rename = "S1")]
    pub s1: Matrix2,
    #[serde(rename = "S2")]
    pub s2: Matrix2,
    #[serde(rename = "expT1")]
    pub exp_t1: Matrix2,
    /// Connection matrices used in the assembly, by name.
    pub connections: Vec<(String, Matrix2)>,
    pub hypergeometric: ConnectionParams,
}

impl MonodromyTuple {
    /// `(label, matrix)` for the four local monodromies.
    pub fn labeled(&self) -> [(&'static str, Matrix2); 4] {
        [("M0", self.m0), ("Mt2", self.mt2), ("M1", self.m1), ("Minf", self.minf)]
    }

    /// The product that the cyclic relation sets to the identity.
    pub fn cyclic_product(&self) -> Matrix2 {
        if self.solution.has_t1_pole() {
            self.minf * self.mt2 * self.m0 * self.s1 * self.s2 * self.exp_t1
        } else {
            self.minf * self.m1 * self.mt2 * self.m0
        }
    }

    pub fn cyclic_residual(&self) -> f64 {
        self.cyclic_product().dist_identity()
    }
}

fn e(z: C64) -> C64 {
    exp_2pii(z)
}

pub fn closed_form_monodromy(p: &Params, id: SolutionId) -> Result<MonodromyTuple> {
    closed_form_monodromy_variant(p, id, TupleVariant::Consistent)
}

pub fn closed_form_monodromy_variant(p: &Params, id: SolutionId, variant: TupleVariant) -> Result<MonodromyTuple> {
    p.require_generic()?;
    let (a0, a1, a2, ai, nu) = (p.alpha0, p.alpha1, p.alpha2, p.alpha_inf, p.nu);
    let printed = variant == TupleVariant::AsPrinted;
    let exp_t1 = Matrix2::diag(ONE, e(a1));
    let d0 = Matrix2::diag(ONE, e(a0));
    let d2 = Matrix2::diag(ONE, e(a2));
    let dinf = Matrix2::diag(e(nu), e(nu + ai));
    let hyper = if printed && id.index() == 4 {
        ConnectionParams::Gauss(crate::specfun::GaussParams::new(nu, nu + ai, ONE - a2))
    } else {
        connection_params(id, p)
    };
    match hyper {
        ConnectionParams::Gauss(g) => {
            let con = gauss_connection_matrices(&g)?;
            let conj = |c: &Matrix2, d: Matrix2| -> Result<Matrix2> { Ok(c.inverse()? * d * *c) };
            let d1 = Matrix2::diag(ONE, e(a1));
            let (m0, mt2, m1, minf) = match id.index() {
                1 => (d0, conj(&con.c01, d2)?, conj(&con.c0inf, d1)?, conj(&con.c0inf, dinf)?),
                2 => (
                    d0,
                    conj(&con.c01, d2)?,
                    conj(&con.c0inf, Matrix2::diag(e(a1), ONE))?,
                    conj(&con.c0inf, dinf)?,
                ),
                3 => (d0, d2, conj(&con.c01, d1)?, conj(&con.c0inf, dinf)?),
                _ if printed => (d0, d2, conj(&con.c01, d1)?, conj(&con.c0inf, dinf)?),
                _ => (d0, Matrix2::diag(e(a2), ONE), conj(&con.c01, d1)?, conj(&con.c0inf, dinf)?),
            };
            Ok(MonodromyTuple {
                solution: id,
                m0,
                mt2,
                m1,
                minf,
                s1: Matrix2::IDENTITY,
                s2: Matrix2::IDENTITY,
                exp_t1,
                connections: vec![("C01".into(), con.c01), ("C0inf".into(), con.c0inf)],
                hypergeometric: hyper,
            })
        }
        ConnectionParams::Kummer(k) => {
            let c = kummer_connection_matrix(&k)?;
            let ci = c.inverse()?;
            let conj = |d: Matrix2| c * d * ci;
            let st = kummer_stokes_matrices(&k);
            let (m0, mt2, minf) = match id.index() {
                5 => (conj(d0), conj(d2), conj(dinf)),
                6 => (conj(d0), conj(d2), conj(Matrix2::diag(e(nu + ai), e(nu)))),
                7 => (conj(d0), conj(Matrix2::diag(e(a2), ONE)), conj(dinf)),
                _ if printed => (conj(Matrix2::diag(e(a0), ONE)), conj(d2), conj(dinf)),
                _ => (conj(d0), conj(Matrix2::diag(e(a2), ONE)), conj(Matrix2::diag(e(nu + ai), e(nu)))),
            };
            Ok(MonodromyTuple {
                solution: id,
                m0,
                mt2,
                m1: st.s1 * st.s2 * exp_t1,
                minf,
                s1: st.s1,
                s2: st.s2,
                exp_t1,
                connections: vec![("C".into(), c)],
                hypergeometric: hyper,
            })
        }
    }
}

/// `det Mj` as dictated by the local exponents of the full equation.
pub fn expected_determinants(p: &Params) -> [(&'static str, C64); 4] {
    [
        ("M0", e(p.alpha0)),
        ("Mt2", e(p.alpha2)),
        ("M1", e(p.alpha1)),
        ("Minf", e(2.0 * p.nu + p.alpha_inf)),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub cyclic_residual: f64,
    /// Commutator norms asserted to vanish for this solution.
    pub commutators: Vec<(String, f64)>,
    /// `max(‖S1 − I‖, ‖S2 − I‖)` for the solutions with trivial Stokes data.
    pub stokes_deviation: Option<f64>,
    /// `|det Mj − expected|` per matrix.
    pub determinants: Vec<(String, f64)>,
}

impl IdentityReport {
    pub fn max_deviation(&self) -> f64 {
        let mut m = self.cyclic_residual;
        for (_, v) in self.commutators.iter().chain(self.determinants.iter()) {
            m = m.max(*v);
        }
        m.max(self.stokes_deviation.unwrap_or(0.0))
    }
}

pub fn group_identities(t: &MonodromyTuple, p: &Params) -> IdentityReport {
    let comm = |name: &str, a: &Matrix2, b: &Matrix2| (name.to_string(), a.commutator(b).norm());
    let commutators = match t.solution.index() {
        1 | 2 => vec![comm("[M1,Minf]", &t.m1, &t.minf)],
        3 | 4 => vec![comm("[M0,Mt2]", &t.m0, &t.mt2)],
        _ => vec![
            comm("[M0,Minf]", &t.m0, &t.minf),
            comm("[M0,Mt2]", &t.m0, &t.mt2),
            comm("[Mt2,Minf]", &t.mt2, &t.minf),
        ],
    };
    let stokes_deviation =
        (!t.solution.has_t1_pole()).then(|| t.s1.dist_identity().max(t.s2.dist_identity()));
    let mats = t.labeled();
    let determinants = expected_determinants(p)
        .iter()
        .zip(mats.iter())
        .map(|((name, want), (_, m))| (name.to_string(), (m.det() - want).norm()))
        .collect();
    IdentityReport { cyclic_residual: t.cyclic_residual(), commutators, stokes_deviation, determinants }
}
