use super::rational::{partial_fractions, PoleTerm, RationalFn, RationalODE};
use crate::complex::{ONE, ZERO};
use crate::error::Result;
use crate::garnier::{GarnierCoords, Params};

/// The full equation with three regular singular points `0, t2, ∞`, the
/// rank-one irregular point `x = 1` and apparent points `λ1, λ2`.
pub fn lg2_coefficients(g: &GarnierCoords, p: &Params) -> Result<RationalODE> {
    let GarnierCoords { lambda1: l1, lambda2: l2, mu1, mu2, k1, k2, t1, t2 } = *g;
    let pf = RationalFn {
        poles: vec![
            PoleTerm::new(ZERO, 1, ONE - p.alpha0),
            PoleTerm::new(ONE, 2, p.eta * t1),
            PoleTerm::new(ONE, 1, 2.0 - p.alpha1),
            PoleTerm::new(t2, 1, ONE - p.alpha2),
            PoleTerm::new(l1, 1, -ONE),
            PoleTerm::new(l2, 1, -ONE),
        ],
        constant: ZERO,
    };
    let mut q = Vec::new();
    q.extend(partial_fractions(p.kappa(), &[(ZERO, 1), (ONE, 1)])?);
    q.extend(partial_fractions(-t1 * k1, &[(ZERO, 1), (ONE, 2)])?);
    q.extend(partial_fractions(-t2 * (t2 - 1.0) * k2, &[(ZERO, 1), (ONE, 1), (t2, 1)])?);
    for (l, mu) in [(l1, mu1), (l2, mu2)] {
        q.extend(partial_fractions(l * (l - 1.0) * mu, &[(ZERO, 1), (ONE, 1), (l, 1)])?);
    }
    let ode = RationalODE::new("full equation", "x", pf, RationalFn { poles: q, constant: ZERO })?;
    Ok(ode.with_constant("t1", t1).with_constant("t2", t2))
}
