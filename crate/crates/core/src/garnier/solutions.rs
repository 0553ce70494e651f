//! The eight special solutions: pole profiles, seeds and displayed coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::params::Params;
use crate::complex::{C64, ZERO};
use crate::error::{Error, Result};

/// Canonical coordinates in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coord {
    Q1,
    Q2,
    P1,
    P2,
}

impl Coord {
    pub const ALL: [Coord; 4] = [Coord::Q1, Coord::Q2, Coord::P1, Coord::P2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["q1", "q2", "p1", "p2"][self.index()]
    }
}

/// Index 1..=8 of a special solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct SolutionId(u8);

impl TryFrom<u8> for SolutionId {
    type Error = Error;
    fn try_from(k: u8) -> Result<Self> {
        SolutionId::new(k)
    }
}

impl From<SolutionId> for u8 {
    fn from(s: SolutionId) -> u8 {
        s.0
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl SolutionId {
    pub fn new(k: u8) -> Result<Self> {
        if (1..=8).contains(&k) {
            Ok(SolutionId(k))
        } else {
            Err(Error::InvalidArgument(format!("solution index {k} is not in 1..=8")))
        }
    }

    pub fn all() -> impl Iterator<Item = SolutionId> {
        (1..=8).map(SolutionId)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn has_t1_pole(self) -> bool {
        self.0 >= 5
    }

    pub fn has_s2_pole(self) -> bool {
        matches!(self.0, 3 | 4 | 7 | 8)
    }

    /// Whether the Stokes data at x = 1 is nontrivial.
    pub fn is_irregular_type(self) -> bool {
        self.has_t1_pole()
    }

    /// Exponents `(a, b)` with `coord = t1^a s2^b · (holomorphic)`.
    pub fn profile(self) -> [(i32, i32); 4] {
        let (a, b) = (self.has_t1_pole() as i32, self.has_s2_pole() as i32);
        [(-a, 0), (0, b), (a, 0), (0, -b)]
    }

    /// Constant terms of the holomorphic parts.
    pub fn seed(self, p: &Params) -> [C64; 4] {
        let (a0, a1, a2, ai, nu, eta) = (p.alpha0, p.alpha1, p.alpha2, p.alpha_inf, p.nu, p.eta);
        match self.0 {
            1 => [eta / ai, (ai + a1) / ai, ZERO, -nu * ai / (ai + a1)],
            2 => [-eta / ai, (ai - a1) / ai, ZERO, -(ai + nu) * ai / (ai - a1)],
            3 => [-eta / a1, a2 / (a0 + a2), ZERO, ZERO],
            4 => [-eta / a1, a2 / (a2 - a0), ZERO, a2 - a0],
            5 => [(ai + a0 + a2) / ai, ZERO, -nu * ai / (ai + a0 + a2), ZERO],
            6 => [(ai - a0 - a2) / ai, ZERO, -(nu + ai) * ai / (ai - a0 - a2), ZERO],
            7 => [(ai + a0 - a2) / ai, a2 / ai, -(nu + a2) * ai / (ai + a0 - a2), ai],
            _ => [(ai - a0 + a2) / ai, -a2 / ai, -(nu + a2 + ai) * ai / (ai - a0 + a2), -ai],
        }
    }
}

/// A leading coefficient as displayed for a special solution.
///
/// `j, k` index the holomorphic part (after removing the profile monomial).
/// When the display is inconsistent with the equations, `printed` keeps the
/// literal value and `value` the one the equations force.
#[derive(Clone, Debug, Serialize)]
pub struct DisplayedCoeff {
    pub coord: Coord,
    pub j: usize,
    pub k: usize,
    #[serde(with = "crate::complex::serde_cx")]
    pub value: C64,
    #[serde(with = "crate::complex::serde_cx")]
    pub printed: C64,
    pub erratum: Option<&'static str>,
}

impl DisplayedCoeff {
    fn exact(coord: Coord, j: usize, k: usize, value: C64) -> Self {
        DisplayedCoeff { coord, j, k, value, printed: value, erratum: None }
    }

    fn corrected(coord: Coord, j: usize, k: usize, value: C64, printed: C64, why: &'static str) -> Self {
        DisplayedCoeff { coord, j, k, value, printed, erratum: Some(why) }
    }
}

/// Every coefficient fixed by the displayed leading terms, including the
/// zeros implied by the stated remainder ideals.
pub fn displayed_coefficients(id: SolutionId, p: &Params) -> Vec<DisplayedCoeff> {
    use Coord::*;
    let (a0, a1, a2, ai, nu, eta) = (p.alpha0, p.alpha1, p.alpha2, p.alpha_inf, p.nu, p.eta);
    let seed = id.seed(p);
    let mut out: Vec<DisplayedCoeff> = Coord::ALL
        .iter()
        .map(|&cd| DisplayedCoeff::exact(cd, 0, 0, seed[cd.index()]))
        .collect();
    let d = DisplayedCoeff::exact;
    match id.index() {
        1 => {
            let printed = (ai + a1) * (nu + a2) / (ai * (1.0 - ai - a1));
            out.push(DisplayedCoeff::corrected(P1, 1, 1, p1_t1s2(p, 1), printed, P1_ERRATUM));
            out.extend([d(P1, 1, 0, ZERO), d(P1, 0, 1, ZERO), d(P1, 2, 0, ZERO)]);
        }
        2 => {
            let printed = (ai - a1) * (nu + a2 + ai) / (ai * (1.0 + ai - a1));
            out.push(DisplayedCoeff::corrected(P1, 1, 1, p1_t1s2(p, 2), printed, P1_ERRATUM));
            out.extend([d(P1, 1, 0, ZERO), d(P1, 0, 1, ZERO), d(P1, 2, 0, ZERO)]);
        }
        3 => {
            out.push(d(P1, 1, 0, p.kappa() / (1.0 - a1)));
            out.push(d(P2, 0, 1, p.kappa() / (1.0 - a0 - a2)));
            out.push(d(P2, 1, 0, ZERO));
        }
        4 => {
            out[P2.index()] = DisplayedCoeff::corrected(
                P2,
                0,
                0,
                a2 - a0,
                a0 - a2,
                "constant of s2·p2 has the opposite sign",
            );
            out.push(d(P1, 1, 0, (nu + a2) * (nu + a2 + ai) / (1.0 - a1)));
        }
        5 => {
            out.push(d(Q2, 0, 1, -a2 / ai));
            out.push(d(Q2, 1, 0, ZERO));
            out.push(d(P2, 1, 0, eta * nu * ai / ((a1 + 2.0 * nu) * (ai + a0 + a2))));
        }
        6 => {
            out.push(d(Q2, 0, 1, a2 / ai));
            out.push(d(Q2, 1, 0, ZERO));
            let den = ai - a0 - a2;
            out.push(DisplayedCoeff::corrected(
                P2,
                1,
                0,
                eta * ai * (nu + ai) / (den * (1.0 + den)),
                eta * ai * (nu + ai) / (den * (1.0 - den)),
                "second denominator factor is 1+α∞−α0−α2",
            ));
        }
        _ => {}
    }
    out
}

const P1_ERRATUM: &str = "displayed t1·s2 coefficient of p1 disagrees with the unique expansion";

/// Value forced by the equations: the displayed numerator carries `q2`'s
/// constant where `p2`'s belongs.
fn p1_t1s2(p: &Params, id: u8) -> C64 {
    let (a1, a2, ai, nu) = (p.alpha1, p.alpha2, p.alpha_inf, p.nu);
    let p2 = SolutionId(id).seed(p)[Coord::P2.index()];
    if id == 1 {
        p2 * (nu + a2) / (1.0 - ai - a1)
    } else {
        p2 * (nu + a2 + ai) / (1.0 + ai - a1)
    }
}
