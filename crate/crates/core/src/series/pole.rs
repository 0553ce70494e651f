use serde::{Deserialize, Serialize};

use super::{BiSeries, BiSeriesJson, Var};
use crate::complex::{C64, ZERO};
use crate::error::{Error, Result};

/// A [`BiSeries`] times `t1^e1 s2^e2` with `e1, e2` in `{-1, 0, 1}`.
///
/// `pole_*` divides by the variable, `factor_*` multiplies by it. Setting both
/// flags for the same variable cancels.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSeries {
    pub base: BiSeries,
    pub pole_t1: bool,
    pub pole_s2: bool,
    pub factor_t1: bool,
    pub factor_s2: bool,
}

impl PoleSeries {
    pub fn holomorphic(base: BiSeries) -> Self {
        PoleSeries {
            base,
            pole_t1: false,
            pole_s2: false,
            factor_t1: false,
            factor_s2: false,
        }
    }

    /// Net exponents `(e1, e2)` of the monomial prefactor.
    pub fn exponents(&self) -> (i32, i32) {
        (
            self.factor_t1 as i32 - self.pole_t1 as i32,
            self.factor_s2 as i32 - self.pole_s2 as i32,
        )
    }

    pub fn from_exponents(base: BiSeries, e1: i32, e2: i32) -> Self {
        PoleSeries {
            base,
            pole_t1: e1 < 0,
            pole_s2: e2 < 0,
            factor_t1: e1 > 0,
            factor_s2: e2 > 0,
        }
    }

    fn check_point(&self, t1: C64, s2: C64) -> Result<()> {
        let (e1, e2) = self.exponents();
        if (e1 < 0 && t1 == ZERO) || (e2 < 0 && s2 == ZERO) {
            return Err(Error::EvalAtPole);
        }
        Ok(())
    }

    pub fn eval(&self, t1: C64, s2: C64) -> Result<C64> {
        self.check_point(t1, s2)?;
        let (e1, e2) = self.exponents();
        Ok(self.base.eval(t1, s2) * t1.powi(e1) * s2.powi(e2))
    }

    /// Partial derivative of the represented function at a point.
    pub fn eval_partial(&self, v: Var, t1: C64, s2: C64) -> Result<C64> {
        self.check_point(t1, s2)?;
        let (e1, e2) = self.exponents();
        let b = self.base.eval(t1, s2);
        let db = self.base.partial(v).eval(t1, s2);
        let pref = t1.powi(e1) * s2.powi(e2);
        Ok(match v {
            Var::T1 => db * pref + b * (e1 as f64) * t1.powi(e1 - 1) * s2.powi(e2),
            Var::S2 => db * pref + b * (e2 as f64) * t1.powi(e1) * s2.powi(e2 - 1),
        })
    }

    pub fn to_json(&self) -> PoleSeriesJson {
        PoleSeriesJson {
            series: self.base.to_json(),
            pole_t1: self.pole_t1,
            pole_s2: self.pole_s2,
            factor_t1: self.factor_t1,
            factor_s2: self.factor_s2,
        }
    }

    pub fn from_json(j: &PoleSeriesJson) -> Result<Self> {
        Ok(PoleSeries {
            base: BiSeries::from_json(&j.series)?,
            pole_t1: j.pole_t1,
            pole_s2: j.pole_s2,
            factor_t1: j.factor_t1,
            factor_s2: j.factor_s2,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleSeriesJson {
    #[serde(flatten)]
    pub series: BiSeriesJson,
    pub pole_t1: bool,
    pub pole_s2: bool,
    #[serde(default)]
    pub factor_t1: bool,
    pub factor_s2: bool,
}
