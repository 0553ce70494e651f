use std::ops::{Add, Mul, Neg, Sub};

use super::{BiSeries, PoleSeries, Var};
use crate::complex::{C64, ONE};

/// Bivariate Laurent series with precision tracking.
///
/// Represents `t1^a s2^b * base` where `base` is a [`BiSeries`] of order `w`.
/// Every coefficient of total degree `<= a + b + w` is exact; higher degrees
/// are unknown. Products lose precision the way p-adic products do:
/// `prec(x*y) = min(prec(x) + val(y), prec(y) + val(x))`, with `val` the
/// declared lower bound `a + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    shift: (i32, i32),
    base: Option<BiSeries>,
}

impl Laurent {
    /// Exact monomial `c t1^j s2^k`, stored through absolute degree `cap`.
    pub fn exact(c: C64, j: i32, k: i32, cap: i32) -> Self {
        let w = cap - j - k;
        Laurent {
            shift: (j, k),
            base: (w >= 0).then(|| BiSeries::constant(c, w as usize)),
        }
    }

    pub fn from_series(base: BiSeries, shift: (i32, i32)) -> Self {
        Laurent {
            shift,
            base: Some(base),
        }
    }

    pub fn from_pole_series(p: &PoleSeries) -> Self {
        Self::from_series(p.base.clone(), p.exponents())
    }

    pub fn shift(&self) -> (i32, i32) {
        self.shift
    }

    /// Lower bound on the total degree of any nonzero term.
    pub fn valuation(&self) -> i32 {
        self.shift.0 + self.shift.1
    }

    /// Highest total degree known exactly, `None` if nothing is known.
    pub fn precision(&self) -> Option<i32> {
        self.base
            .as_ref()
            .map(|b| self.valuation() + b.order() as i32)
    }

    /// Coefficient of `t1^j s2^k`, or `None` if outside the known range.
    pub fn coeff(&self, j: i32, k: i32) -> Option<C64> {
        let b = self.base.as_ref()?;
        let (dj, dk) = (j - self.shift.0, k - self.shift.1);
        if dj < 0 || dk < 0 {
            return (j + k <= self.precision()?).then_some(C64::new(0.0, 0.0));
        }
        ((dj + dk) as usize <= b.order()).then(|| b.get(dj as usize, dk as usize))
    }

    /// Known coefficients as `(j, k, c)` with absolute exponents.
    pub fn terms(&self) -> Vec<(i32, i32, C64)> {
        match &self.base {
            None => Vec::new(),
            Some(b) => b
                .terms()
                .map(|(j, k, c)| (j as i32 + self.shift.0, k as i32 + self.shift.1, c))
                .collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Laurent {
            shift: self.shift,
            base: self.base.as_ref().map(|b| b.scale(c)),
        }
    }

    /// Euler operator in `v`: `t1 d/dt1` or `s2 d/ds2`.
    pub fn euler(&self, v: Var) -> Self {
        let e = match v {
            Var::T1 => self.shift.0,
            Var::S2 => self.shift.1,
        };
        Laurent {
            shift: self.shift,
            base: self
                .base
                .as_ref()
                .map(|b| &b.euler(v) + &b.scale(C64::new(e as f64, 0.0))),
        }
    }

    fn realigned(&self, to: (i32, i32), prec: i32) -> Option<BiSeries> {
        let b = self.base.as_ref()?;
        let (dj, dk) = ((self.shift.0 - to.0) as usize, (self.shift.1 - to.1) as usize);
        let w = prec - to.0 - to.1;
        (w >= 0).then(|| b.shifted(dj, dk).truncated(w as usize))
    }

    fn combine(&self, rhs: &Laurent, sign: f64) -> Laurent {
        let to = (self.shift.0.min(rhs.shift.0), self.shift.1.min(rhs.shift.1));
        let prec = match (self.precision(), rhs.precision()) {
            (Some(a), Some(b)) => a.min(b),
            _ => return Laurent { shift: to, base: None },
        };
        let base = match (self.realigned(to, prec), rhs.realigned(to, prec)) {
            (Some(a), Some(b)) => Some(&a + &b.scale(C64::new(sign, 0.0))),
            _ => None,
        };
        Laurent { shift: to, base }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let shift = (self.shift.0 + rhs.shift.0, self.shift.1 + rhs.shift.1);
        let base = match (&self.base, &rhs.base) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        Laurent { shift, base }
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-ONE)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
