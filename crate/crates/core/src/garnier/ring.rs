//! The two polynomial Hamiltonians, written once over any commutative ring.
//!
//! `num1 = s1²·H1` and `num2 = s2(s2−1)·H2` as polynomials in the canonical
//! coordinates, `s1 = 1/t1` and `s2`.

use super::params::Params;
use crate::complex::{C64, ONE};
use crate::series::{BiSeries, Laurent};

pub trait Ring: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: C64) -> Self;
}

impl Ring for C64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: C64) -> Self {
        self * c
    }
}

impl Ring for BiSeries {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: C64) -> Self {
        BiSeries::scale(self, c)
    }
}

impl Ring for Laurent {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: C64) -> Self {
        Laurent::scale(self, c)
    }
}

/// Canonical coordinates and times as ring elements; `one` supplies constants.
#[derive(Clone, Debug)]
pub struct State<R> {
    pub q1: R,
    pub q2: R,
    pub p1: R,
    pub p2: R,
    pub t1: R,
    pub s1: R,
    pub s2: R,
    pub one: R,
}

/// Partial derivatives of a Hamiltonian numerator.
#[derive(Clone, Debug)]
pub struct Gradient<R> {
    pub dq1: R,
    pub dq2: R,
    pub dp1: R,
    pub dp2: R,
}

struct Coeffs {
    a0: C64,
    a1: C64,
    a2: C64,
    eta: C64,
    kappa: C64,
    /// α0+α2−1
    c02: C64,
    /// α0+α1−1
    c01: C64,
}

impl Coeffs {
    fn new(p: &Params) -> Self {
        Coeffs {
            a0: p.alpha0,
            a1: p.alpha1,
            a2: p.alpha2,
            eta: p.eta,
            kappa: p.kappa(),
            c02: p.alpha0 + p.alpha2 - 1.0,
            c01: p.alpha0 + p.alpha1 - 1.0,
        }
    }
}

impl<R: Ring> State<R> {
    fn k(&self, c: C64) -> R {
        self.one.scale(c)
    }

    /// `w = t1·s2(s2−1)`, the coefficient written `s2(s2−1)/s1`.
    fn w(&self) -> R {
        self.t1.mul(&self.s2).mul(&self.s2.sub(&self.one))
    }

    fn b1(&self, c: &Coeffs) -> R {
        let (q1, q2, s1) = (&self.q1, &self.q2, &self.s1);
        let q1ms1 = q1.sub(s1);
        q1.mul(q1)
            .scale(c.c02)
            .add(&q1.mul(&q1ms1).scale(c.a1))
            .add(&q1ms1.scale(c.eta))
            .add(&s1.mul(q2).scale(c.eta))
    }

    fn b2(&self, c: &Coeffs) -> R {
        let (q1, q2, s2) = (&self.q1, &self.q2, &self.s2);
        q1.mul(q2)
            .scale(c.c01)
            .add(&q1.mul(&q2.sub(s2)).scale(c.a2))
            .sub(&s2.sub(&self.one).mul(q2).scale(c.eta))
    }

    fn b3(&self, c: &Coeffs) -> R {
        let (q2, s2) = (&self.q2, &self.s2);
        let q2m1 = q2.sub(&self.one);
        let q2ms2 = q2.sub(s2);
        q2.mul(&q2m1)
            .scale(c.a0 - 1.0)
            .add(&q2.mul(&q2ms2).scale(c.a1))
            .add(&q2m1.mul(&q2ms2).scale(c.a2))
            .add(&self.w().mul(&self.q1.scale(c.a2).add(&q2.scale(c.eta))))
    }

    /// `s1²·H1`.
    pub fn num1(&self, p: &Params) -> R {
        let c = Coeffs::new(p);
        let (q1, q2, p1, p2, s1, s2) = (&self.q1, &self.q2, &self.p1, &self.p2, &self.s1, &self.s2);
        let q1sq = q1.mul(q1);
        q1sq.mul(&q1.sub(s1))
            .mul(&p1.mul(p1))
            .add(&q1sq.mul(q2).mul(p1).mul(p2).scale(ONE * 2.0))
            .add(&q1.mul(q2).mul(&q2.sub(s2)).mul(&p2.mul(p2)))
            .sub(&self.b1(&c).mul(p1))
            .sub(&self.b2(&c).mul(p2))
            .add(&q1.scale(c.kappa))
    }

    /// `s2(s2−1)·H2`.
    pub fn num2(&self, p: &Params) -> R {
        let c = Coeffs::new(p);
        let (q1, q2, p1, p2, s2) = (&self.q1, &self.q2, &self.p1, &self.p2, &self.s2);
        let q2ms2 = q2.sub(s2);
        let quad = q2
            .mul(&q2.sub(&self.one))
            .mul(&q2ms2)
            .add(&self.w().mul(q1).mul(q2));
        q1.mul(q1)
            .mul(q2)
            .mul(&p1.mul(p1))
            .add(&q1.mul(q2).mul(&q2ms2).mul(p1).mul(p2).scale(ONE * 2.0))
            .add(&quad.mul(&p2.mul(p2)))
            .sub(&self.b2(&c).mul(p1))
            .sub(&self.b3(&c).mul(p2))
            .add(&q2.scale(c.kappa))
    }

    /// Hand-differentiated gradient of `num1`.
    pub fn grad1(&self, p: &Params) -> Gradient<R> {
        let c = Coeffs::new(p);
        let (q1, q2, p1, p2, s1, s2) = (&self.q1, &self.q2, &self.p1, &self.p2, &self.s1, &self.s2);
        let two = ONE * 2.0;
        let q1sq = q1.mul(q1);
        let q2ms2 = q2.sub(s2);
        let dp1 = q1sq
            .mul(&q1.sub(s1))
            .mul(p1)
            .scale(two)
            .add(&q1sq.mul(q2).mul(p2).scale(two))
            .sub(&self.b1(&c));
        let dp2 = q1sq
            .mul(q2)
            .mul(p1)
            .scale(two)
            .add(&q1.mul(q2).mul(&q2ms2).mul(p2).scale(two))
            .sub(&self.b2(&c));
        let lin_p1 = q1
            .scale(two * c.c02)
            .add(&q1.scale(two).sub(s1).scale(c.a1))
            .add(&self.k(c.eta));
        let lin_p2 = q2.scale(c.c01).add(&q2ms2.scale(c.a2));
        let dq1 = q1sq
            .scale(ONE * 3.0)
            .sub(&q1.mul(s1).scale(two))
            .mul(&p1.mul(p1))
            .add(&q1.mul(q2).mul(p1).mul(p2).scale(ONE * 4.0))
            .add(&q2.mul(&q2ms2).mul(&p2.mul(p2)))
            .sub(&lin_p1.mul(p1))
            .sub(&lin_p2.mul(p2))
            .add(&self.k(c.kappa));
        let dq2 = q1sq
            .mul(p1)
            .mul(p2)
            .scale(two)
            .add(&q1.mul(&q2.scale(two).sub(s2)).mul(&p2.mul(p2)))
            .sub(&s1.mul(p1).scale(c.eta))
            .sub(
                &q1.scale(c.c01 + c.a2)
                    .sub(&s2.sub(&self.one).scale(c.eta))
                    .mul(p2),
            );
        Gradient { dq1, dq2, dp1, dp2 }
    }

    /// Hand-differentiated gradient of `num2`.
    pub fn grad2(&self, p: &Params) -> Gradient<R> {
        let c = Coeffs::new(p);
        let (q1, q2, p1, p2, s2) = (&self.q1, &self.q2, &self.p1, &self.p2, &self.s2);
        let two = ONE * 2.0;
        let w = self.w();
        let q2m1 = q2.sub(&self.one);
        let q2ms2 = q2.sub(s2);
        let quad = q2.mul(&q2m1).mul(&q2ms2).add(&w.mul(q1).mul(q2));
        let dp1 = q1
            .mul(q1)
            .mul(q2)
            .mul(p1)
            .scale(two)
            .add(&q1.mul(q2).mul(&q2ms2).mul(p2).scale(two))
            .sub(&self.b2(&c));
        let dp2 = q1
            .mul(q2)
            .mul(&q2ms2)
            .mul(p1)
            .scale(two)
            .add(&quad.mul(p2).scale(two))
            .sub(&self.b3(&c));
        let dq1 = q1
            .mul(q2)
            .mul(&p1.mul(p1))
            .scale(two)
            .add(&q2.mul(&q2ms2).mul(p1).mul(p2).scale(two))
            .add(&w.mul(q2).mul(&p2.mul(p2)))
            .sub(&q2.scale(c.c01).add(&q2ms2.scale(c.a2)).mul(p1))
            .sub(&w.mul(p2).scale(c.a2));
        let dquad = q2m1
            .mul(&q2ms2)
            .add(&q2.mul(&q2ms2))
            .add(&q2.mul(&q2m1))
            .add(&w.mul(q1));
        let two_q2 = q2.scale(two);
        let lin_p2 = two_q2
            .sub(&self.one)
            .scale(c.a0 - 1.0)
            .add(&two_q2.sub(s2).scale(c.a1))
            .add(&two_q2.sub(s2).sub(&self.one).scale(c.a2))
            .add(&w.scale(c.eta));
        let dq2 = q1
            .mul(q1)
            .mul(&p1.mul(p1))
            .add(&q1.mul(&two_q2.sub(s2)).mul(p1).mul(p2).scale(two))
            .add(&dquad.mul(&p2.mul(p2)))
            .sub(
                &q1.scale(c.c01 + c.a2)
                    .sub(&s2.sub(&self.one).scale(c.eta))
                    .mul(p1),
            )
            .sub(&lin_p2.mul(p2))
            .add(&self.k(c.kappa));
        Gradient { dq1, dq2, dp1, dp2 }
    }
}
