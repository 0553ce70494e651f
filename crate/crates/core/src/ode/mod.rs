//! Second-order linear equations with rational coefficients: the full
//! equation with its Garnier data, its limit equations, and local exponents.

mod eq1;
mod limits;
mod rational;

pub use eq1::lg2_coefficients;
pub use limits::{closed_form_solutions, connection_params, ConnectionParams, limit_equation, ClosedSolution, LimitEquationId, LimitStage};
pub use rational::{partial_fractions, PoleTerm, RationalFn, RationalODE, COLLISION_TOL};

use crate::complex::{C64, ONE, ZERO};
use crate::error::{Error, Result};

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Finite(C64),
    Infinity,
}

fn indicial_roots(b: C64, c: C64) -> [C64; 2] {
    // r² + b r + c = 0
    let d = (b * b - 4.0 * c).sqrt();
    let mut r = [(-b - d) / 2.0, (-b + d) / 2.0];
    r.sort_by(|u, v| u.re.total_cmp(&v.re).then(u.im.total_cmp(&v.im)));
    r
}

/// Exponents of a regular singular point, sorted by real then imaginary part.
pub fn local_exponents(ode: &RationalODE, at: Point) -> Result<[C64; 2]> {
    match at {
        Point::Finite(a) => {
            let a = ode
                .singular_points()
                .into_iter()
                .find(|s| (*s - a).norm() < COLLISION_TOL)
                .ok_or_else(|| Error::NotASingularity(format!("{a}")))?;
            if ode.p.coefficient(a, 2) != ZERO {
                return Err(Error::InvalidArgument(format!("{a} is an irregular singular point")));
            }
            let p0 = ode.p.coefficient(a, 1);
            let q0 = ode.q.coefficient(a, 2);
            Ok(indicial_roots(p0 - ONE, q0))
        }
        Point::Infinity => {
            let q_res: C64 = ode.q.poles.iter().filter(|t| t.order == 1).map(|t| t.coeff).sum();
            let scale = 1.0 + ode.q.poles.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
            if ode.p.constant != ZERO || ode.q.constant != ZERO || q_res.norm() > 1e-12 * scale {
                return Err(Error::InvalidArgument("infinity is an irregular singular point".into()));
            }
            let p_inf: C64 = ode.p.poles.iter().filter(|t| t.order == 1).map(|t| t.coeff).sum();
            let q_inf: C64 = ode
                .q
                .poles
                .iter()
                .map(|t| if t.order == 1 { t.coeff * t.at } else { t.coeff })
                .sum();
            Ok(indicial_roots(ONE - p_inf, q_inf))
        }
    }
}

/// True when both multisets agree within `tol`.
pub fn exponents_match(got: [C64; 2], want: [C64; 2], tol: f64) -> bool {
    let d = |a: C64, b: C64| (a - b).norm();
    (d(got[0], want[0]) < tol && d(got[1], want[1]) < tol) || (d(got[0], want[1]) < tol && d(got[1], want[0]) < tol)
}
