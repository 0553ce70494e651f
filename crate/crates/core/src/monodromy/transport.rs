//! Transport of a fundamental matrix along piecewise paths with an adaptive
//! Dormand–Prince 5(4) pair.

use std::f64::consts::PI;

use serde::Serialize;

use crate::complex::{C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::matrix::Matrix2;
use crate::ode::RationalODE;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rtol: 1e-10, atol: 1e-13, max_steps: 1_000_000 }
    }
}

/// One piece of a path, parametrized over `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    Line { from: C64, to: C64 },
    Arc { center: C64, radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    pub fn point(&self, s: f64) -> C64 {
        match *self {
            Piece::Line { from, to } => from + (to - from) * s,
            Piece::Arc { center, radius, start, sweep } => center + C64::from_polar(radius, start + sweep * s),
        }
    }

    pub fn velocity(&self, s: f64) -> C64 {
        match *self {
            Piece::Line { from, to } => to - from,
            Piece::Arc { radius, start, sweep, .. } => I * sweep * C64::from_polar(radius, start + sweep * s),
        }
    }

    fn length(&self) -> f64 {
        match *self {
            Piece::Line { from, to } => (to - from).norm(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }
}

/// What a loop encircles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Encircled {
    Finite(#[serde(with = "crate::complex::serde_cx")] C64),
    Infinity,
}

/// Closed path from `base` around one point: a tail to the circle, one full
/// turn, the tail back.
#[derive(Clone, Debug, Serialize)]
pub struct LoopPath {
    #[serde(with = "crate::complex::serde_cx")]
    pub base: C64,
    pub around: Encircled,
    pub radius: f64,
    /// `+1` counter-clockwise, `−1` clockwise.
    pub orientation: i8,
    /// Sample count per piece used for the clearance check.
    pub segments: usize,
}

/// Default clearance as a fraction of the nearest-singularity gap.
pub const SAFETY_FRACTION: f64 = 0.25;

impl LoopPath {
    /// Circle about a finite point, based on the circle at angle 0.
    pub fn around(center: C64, radius: f64) -> Self {
        LoopPath { base: center + radius, around: Encircled::Finite(center), radius, orientation: 1, segments: 512 }
    }

    /// Circle about a finite point, reached from `base` by a straight tail.
    pub fn around_from(base: C64, center: C64, radius: f64) -> Self {
        LoopPath { base, around: Encircled::Finite(center), radius, orientation: 1, segments: 512 }
    }

    /// Clockwise circle of the given radius about the origin, i.e. a positive
    /// loop around infinity.
    pub fn around_infinity(base: C64, radius: f64) -> Self {
        LoopPath { base, around: Encircled::Infinity, radius, orientation: -1, segments: 512 }
    }

    /// Loop with the default radius `min(0.5·gap, 0.3)` around a singular
    /// point of `ode`, from `base` if given.
    pub fn default_for(ode: &RationalODE, center: C64, base: Option<C64>) -> Result<Self> {
        let gap = nearest_gap(ode, center)?;
        let radius = (0.5 * gap).min(0.3);
        Ok(match base {
            Some(b) => Self::around_from(b, center, radius),
            None => Self::around(center, radius),
        })
    }

    /// Clockwise circle of radius `10·max|singularity|` (at least 10).
    pub fn default_infinity(ode: &RationalODE, base: Option<C64>) -> Self {
        let rmax = ode.singular_points().iter().map(|a| a.norm()).fold(1.0, f64::max);
        let radius = 10.0 * rmax;
        Self::around_infinity(base.unwrap_or(C64::new(radius, 0.0)), radius)
    }

    pub fn center(&self) -> C64 {
        match self.around {
            Encircled::Finite(c) => c,
            Encircled::Infinity => ZERO,
        }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let c = self.center();
        let d = self.base - c;
        let start = if d.norm() > 0.0 { d.arg() } else { 0.0 };
        let entry = c + C64::from_polar(self.radius, start);
        let arc = Piece::Arc { center: c, radius: self.radius, start, sweep: 2.0 * PI * self.orientation as f64 };
        if (entry - self.base).norm() < 1e-15 * (1.0 + self.radius) {
            vec![arc]
        } else {
            vec![Piece::Line { from: self.base, to: entry }, arc, Piece::Line { from: entry, to: self.base }]
        }
    }

    /// Checks clearance `margin` from every singular point of `ode`.
    pub fn check_clearance(&self, ode: &RationalODE, margin: f64) -> Result<()> {
        check_path(&self.pieces(), ode, margin, self.segments)
    }
}

/// Distance from `center` to the nearest other singular point.
pub fn nearest_gap(ode: &RationalODE, center: C64) -> Result<f64> {
    let pts = ode.singular_points();
    if !pts.iter().any(|a| (*a - center).norm() < 1e-10) {
        return Err(Error::NotASingularity(format!("{center}")));
    }
    Ok(pts
        .iter()
        .map(|a| (*a - center).norm())
        .filter(|d| *d >= 1e-10)
        .fold(f64::INFINITY, f64::min))
}

/// Smallest distance between two finite singular points (1 if there is only one).
pub fn min_gap(ode: &RationalODE) -> f64 {
    let pts = ode.singular_points();
    let mut g = f64::INFINITY;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            g = g.min((*a - *b).norm());
        }
    }
    if g.is_finite() { g } else { 1.0 }
}

pub fn check_path(pieces: &[Piece], ode: &RationalODE, margin: f64, samples: usize) -> Result<()> {
    for piece in pieces {
        for i in 0..=samples {
            let x = piece.point(i as f64 / samples as f64);
            if let Some((a, d)) = ode.nearest_singularity(x) {
                if d < margin {
                    return Err(Error::PathTooClose { at: format!("{a}"), distance: d, margin });
                }
            }
        }
    }
    Ok(())
}

type State = [C64; 4];

fn rhs(ode: &RationalODE, piece: &Piece, s: f64, y: &State) -> Result<State> {
    let x = piece.point(s);
    let (p, q) = ode.eval_pq(x)?;
    let v = piece.velocity(s);
    // Y = [[y0, y1], [y2, y3]], Y' = [[0, 1], [−Q, −P]] Y
    Ok([v * y[2], v * y[3], v * (-q * y[0] - p * y[2]), v * (-q * y[1] - p * y[3])])
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..4 {
            out[i] += k[i] * (h * c);
        }
    }
    out
}

/// Statistics of one transport.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct TransportStats {
    pub accepted: usize,
    pub rejected: usize,
}

fn integrate_piece(
    ode: &RationalODE,
    piece: &Piece,
    y0: State,
    tol: &Tolerances,
    stats: &mut TransportStats,
) -> Result<State> {
    let mut s = 0.0f64;
    let mut y = y0;
    let mut h = (0.01f64).min(0.05 / (1.0 + piece.length()));
    let mut k1 = rhs(ode, piece, s, &y)?;
    while s < 1.0 {
        if stats.accepted + stats.rejected >= tol.max_steps {
            return Err(Error::StepFailure(format!("step budget {} exhausted at s = {s}", tol.max_steps)));
        }
        h = h.min(1.0 - s);
        let k2 = rhs(ode, piece, s + C2 * h, &axpy(&y, h, &[(A21, &k1)]))?;
        let k3 = rhs(ode, piece, s + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]))?;
        let k4 = rhs(ode, piece, s + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = rhs(ode, piece, s + C5 * h, &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
        let k6 = rhs(
            ode,
            piece,
            s + h,
            &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        )?;
        let y5 = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = rhs(ode, piece, s + h, &y5)?;
        let err = axpy(&[ZERO; 4], h, &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)]);
        let en = (0..4)
            .map(|i| err[i].norm() / (tol.atol + tol.rtol * y[i].norm().max(y5[i].norm())))
            .fold(0.0, f64::max);
        if !en.is_finite() {
            return Err(Error::StepFailure(format!("non-finite error estimate at s = {s}")));
        }
        if en <= 1.0 {
            s += h;
            y = y5;
            k1 = k7;
            stats.accepted += 1;
        } else {
            stats.rejected += 1;
        }
        let factor = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < 1e-14 {
            return Err(Error::StepFailure(format!("step size underflow at s = {s}")));
        }
    }
    Ok(y)
}

/// Fundamental matrix at the end of the path, started from the identity.
///
/// Columns hold `(ψ, ψ')` of two solutions, so continuing the row of
/// solutions along the path multiplies it on the right by the result.
pub fn transport(ode: &RationalODE, pieces: &[Piece], tol: &Tolerances) -> Result<(Matrix2, TransportStats)> {
    let mut y: State = [ONE, ZERO, ZERO, ONE];
    let mut stats = TransportStats::default();
    for piece in pieces {
        y = integrate_piece(ode, piece, y, tol, &mut stats)?;
    }
    Ok((Matrix2::new(y[0], y[1], y[2], y[3]), stats))
}

/// Monodromy of one loop at default tolerances and clearance.
pub fn numeric_monodromy(ode: &RationalODE, path: &LoopPath) -> Result<Matrix2> {
    numeric_monodromy_with(ode, path, &Tolerances::default())
}

pub fn numeric_monodromy_with(ode: &RationalODE, path: &LoopPath, tol: &Tolerances) -> Result<Matrix2> {
    let margin = match path.around {
        Encircled::Finite(c) => SAFETY_FRACTION * nearest_gap(ode, c)?.min(path.radius),
        Encircled::Infinity => SAFETY_FRACTION * min_gap(ode),
    };
    path.check_clearance(ode, margin)?;
    Ok(transport(ode, &path.pieces(), tol)?.0)
}
