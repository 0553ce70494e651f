//! Truncated bivariate power series in `(t1, s2)`.
//!
//! A [`BiSeries`] of order `N` stores every coefficient `c[j][k]` of
//! `t1^j s2^k` with `j + k <= N` (total-degree truncation). Coefficients are
//! laid out by total degree, then by the `t1` exponent.

mod laurent;
mod pole;

pub use laurent::Laurent;
pub use pole::{PoleSeries, PoleSeriesJson};

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::complex::{is_finite, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 8;
/// Default absolute tolerance for coefficient comparison.
pub const DEFAULT_EQ_TOL: f64 = 1e-10;
/// Constant terms below this magnitude are treated as zero by [`BiSeries::inverse`].
pub const INVERSE_TOL: f64 = 1e-14;

/// The two series variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    T1,
    S2,
}

#[inline]
fn idx(j: usize, k: usize) -> usize {
    let m = j + k;
    m * (m + 1) / 2 + j
}

#[inline]
fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiSeries {
    order: usize,
    coeffs: Vec<C64>,
}

impl BiSeries {
    pub fn zeros(order: usize) -> Self {
        BiSeries {
            order,
            coeffs: vec![ZERO; len_for(order)],
        }
    }

    pub fn constant(c: C64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    /// `c * t1^j * s2^k`, or zero when `j + k > order`.
    pub fn monomial(c: C64, j: usize, k: usize, order: usize) -> Self {
        let mut s = Self::zeros(order);
        if j + k <= order {
            s.coeffs[idx(j, k)] = c;
        }
        s
    }

    pub fn var(v: Var, order: usize) -> Self {
        match v {
            Var::T1 => Self::monomial(ONE, 1, 0, order),
            Var::S2 => Self::monomial(ONE, 0, 1, order),
        }
    }

    /// Builds a series from `(j, k, c)` triples; later entries overwrite earlier ones.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, C64)>>(order: usize, terms: I) -> Self {
        let mut s = Self::zeros(order);
        for (j, k, c) in terms {
            if j + k <= order {
                s.coeffs[idx(j, k)] = c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> C64 {
        if j + k <= self.order {
            self.coeffs[idx(j, k)]
        } else {
            ZERO
        }
    }

    /// Panics if `j + k` exceeds the order.
    #[inline]
    pub fn set(&mut self, j: usize, k: usize, c: C64) {
        assert!(j + k <= self.order, "({j},{k}) outside order {}", self.order);
        self.coeffs[idx(j, k)] = c;
    }

    /// Iterates `(j, k, c)` in order of increasing total degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..=self.order).flat_map(move |m| (0..=m).map(move |j| (j, m - j, self.coeffs[idx(j, m - j)])))
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut s = Self::zeros(order);
        let n = len_for(order.min(self.order));
        s.coeffs[..n].copy_from_slice(&self.coeffs[..n]);
        s
    }

    /// Multiplies by `t1^dj s2^dk`, raising the order by `dj + dk` so nothing is lost.
    pub fn shifted(&self, dj: usize, dk: usize) -> Self {
        let mut s = Self::zeros(self.order + dj + dk);
        for (j, k, c) in self.terms() {
            s.coeffs[idx(j + dj, k + dk)] = c;
        }
        s
    }

    pub fn scale(&self, lambda: C64) -> Self {
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }

    pub fn constant_term(&self) -> C64 {
        self.coeffs[0]
    }

    /// Largest coefficient magnitude among terms of total degree `m`.
    pub fn max_abs_degree(&self, m: usize) -> f64 {
        if m > self.order {
            return 0.0;
        }
        (0..=m).map(|j| self.coeffs[idx(j, m - j)].norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|&c| is_finite(c))
    }

    pub fn check_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NumericOverflow("non-finite series coefficient".into()))
        }
    }

    /// Orders match and every coefficient agrees within `tol` (absolute).
    pub fn approx_eq(&self, other: &BiSeries, tol: f64) -> bool {
        self.order == other.order
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul_series(&self, other: &BiSeries) -> BiSeries {
        let n = self.order.min(other.order);
        let mut out = BiSeries::zeros(n);
        for m1 in 0..=n {
            for j1 in 0..=m1 {
                let a = self.coeffs[idx(j1, m1 - j1)];
                if a == ZERO {
                    continue;
                }
                let k1 = m1 - j1;
                for m2 in 0..=(n - m1) {
                    for j2 in 0..=m2 {
                        let b = other.coeffs[idx(j2, m2 - j2)];
                        out.coeffs[idx(j1 + j2, k1 + m2 - j2)] += a * b;
                    }
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &BiSeries, f: impl Fn(C64, C64) -> C64) -> BiSeries {
        let n = self.order.min(other.order);
        let len = len_for(n);
        BiSeries {
            order: n,
            coeffs: (0..len).map(|i| f(self.coeffs[i], other.coeffs[i])).collect(),
        }
    }

    /// Multiplicative inverse through the same order.
    pub fn inverse(&self) -> Result<BiSeries> {
        let a0 = self.coeffs[0];
        if a0.norm() < INVERSE_TOL {
            return Err(Error::ZeroConstantTerm(a0.norm()));
        }
        let inv0 = ONE / a0;
        let mut b = BiSeries::zeros(self.order);
        b.coeffs[0] = inv0;
        for m in 1..=self.order {
            for j in 0..=m {
                let k = m - j;
                let mut acc = ZERO;
                for j1 in 0..=j {
                    for k1 in 0..=k {
                        if j1 + k1 == 0 {
                            continue;
                        }
                        acc += self.coeffs[idx(j1, k1)] * b.coeffs[idx(j - j1, k - k1)];
                    }
                }
                b.coeffs[idx(j, k)] = -acc * inv0;
            }
        }
        b.check_finite()
    }

    /// Formal partial derivative; the order drops by one (an order-0 series
    /// differentiates to the zero series of order 0).
    pub fn partial(&self, v: Var) -> BiSeries {
        let n = self.order.saturating_sub(1);
        let mut out = BiSeries::zeros(n);
        if self.order == 0 {
            return out;
        }
        for (j, k, c) in self.terms() {
            match v {
                Var::T1 if j > 0 && j - 1 + k <= n => out.coeffs[idx(j - 1, k)] = c * j as f64,
                Var::S2 if k > 0 && j + k - 1 <= n => out.coeffs[idx(j, k - 1)] = c * k as f64,
                _ => {}
            }
        }
        out
    }

    /// Euler operator `t1 d/dt1` (or `s2 d/ds2`); keeps the order.
    pub fn euler(&self, v: Var) -> BiSeries {
        let mut out = self.clone();
        for m in 0..=self.order {
            for j in 0..=m {
                let f = match v {
                    Var::T1 => j,
                    Var::S2 => m - j,
                };
                out.coeffs[idx(j, m - j)] *= f as f64;
            }
        }
        out
    }

    /// Horner evaluation of the truncation.
    pub fn eval(&self, t1: C64, s2: C64) -> C64 {
        let mut acc = ZERO;
        for j in (0..=self.order).rev() {
            let mut inner = ZERO;
            for k in (0..=(self.order - j)).rev() {
                inner = inner * s2 + self.coeffs[idx(j, k)];
            }
            acc = acc * t1 + inner;
        }
        acc
    }

    pub fn to_json(&self) -> BiSeriesJson {
        BiSeriesJson {
            order: self.order,
            coeffs: self
                .terms()
                .filter(|(_, _, c)| *c != ZERO)
                .map(|(j, k, c)| CoeffJson { j, k, re: c.re, im: c.im })
                .collect(),
        }
    }

    pub fn from_json(j: &BiSeriesJson) -> Result<Self> {
        let mut s = BiSeries::zeros(j.order);
        for t in &j.coeffs {
            if t.j + t.k > j.order {
                return Err(Error::InvalidArgument(format!(
                    "coefficient ({}, {}) exceeds order {}",
                    t.j, t.k, j.order
                )));
            }
            s.coeffs[idx(t.j, t.k)] = C64::new(t.re, t.im);
        }
        s.check_finite()
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        self.scale(-ONE)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BiSeries {
            type Output = BiSeries;
            fn $m(self, rhs: BiSeries) -> BiSeries { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Binary operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Scale(C64),
}

/// Arithmetic entry point; `Scale` ignores `b`. Fails on non-finite results.
pub fn arith(a: &BiSeries, b: &BiSeries, op: ArithOp) -> Result<BiSeries> {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Scale(l) => a.scale(l),
    }
    .check_finite()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub j: usize,
    pub k: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiSeriesJson {
    pub order: usize,
    pub coeffs: Vec<CoeffJson>,
}
