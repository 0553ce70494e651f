//! Sparse Laurent polynomials in (q1, q2, p1, p2, t1, s2) with numeric coefficients.

use std::collections::BTreeMap;

use super::ring::Ring;
use crate::complex::{C64, ONE};
use crate::series::BiSeries;

pub const NVARS: usize = 6;
pub const T1: usize = 4;
pub const S2: usize = 5;

pub type Exps = [i32; NVARS];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    terms: BTreeMap<Exps, C64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(c: C64, e: Exps) -> Self {
        let mut p = Poly::zero();
        p.push(e, c);
        p
    }

    pub fn constant(c: C64) -> Self {
        Self::monomial(c, [0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Self::monomial(ONE, e)
    }

    pub fn var_pow(i: usize, n: i32) -> Self {
        let mut e = [0; NVARS];
        e[i] = n;
        Self::monomial(ONE, e)
    }

    fn push(&mut self, e: Exps, c: C64) {
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if *slot == C64::new(0.0, 0.0) {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.norm()))
    }

    /// Formal partial derivative in variable `i`.
    pub fn diff(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut f = *e;
                f[i] -= 1;
                out.push(f, c * e[i] as f64);
            }
        }
        out
    }

    /// Substitutes `x_v → x_v · t1^{a_v} s2^{b_v}` for the four coordinates.
    pub fn rescale_coordinates(&self, shifts: &[(i32, i32); 4]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            for (v, (a, b)) in shifts.iter().enumerate() {
                f[T1] += a * e[v];
                f[S2] += b * e[v];
            }
            out.push(f, *c);
        }
        out
    }

    /// Multiplies by `t1^a s2^b`.
    pub fn shift_times(&self, a: i32, b: i32) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            f[T1] += a;
            f[S2] += b;
            out.push(f, *c);
        }
        out
    }

    /// Drops terms below `tol` relative to the largest coefficient.
    pub fn pruned(&self, tol: f64) -> Poly {
        let cut = tol * self.max_abs();
        Poly {
            terms: self.terms.iter().filter(|(_, c)| c.norm() > cut).map(|(e, c)| (*e, *c)).collect(),
        }
    }

    /// Exponent vectors with a negative entry.
    pub fn negative_terms(&self) -> Vec<(Exps, C64)> {
        self.terms.iter().filter(|(e, _)| e.iter().any(|&x| x < 0)).map(|(e, c)| (*e, *c)).collect()
    }

    /// Value with the times set to zero and coordinates set to `u`.
    pub fn eval_at_origin(&self, u: &[C64; 4]) -> C64 {
        self.terms
            .iter()
            .filter(|(e, _)| e[T1] == 0 && e[S2] == 0)
            .map(|(e, c)| (0..4).fold(*c, |acc, v| acc * u[v].powi(e[v])))
            .sum()
    }

    pub fn eval(&self, x: &[C64; NVARS]) -> C64 {
        self.terms
            .iter()
            .map(|(e, c)| (0..NVARS).fold(*c, |acc, v| acc * x[v].powi(e[v])))
            .sum()
    }

    /// Substitutes truncated series for the coordinates; exponents must be non-negative.
    pub fn eval_series(&self, u: &[BiSeries; 4]) -> BiSeries {
        let order = u[0].order();
        let max_deg = self.terms.keys().map(|e| *e.iter().take(4).max().unwrap_or(&0)).max().unwrap_or(0);
        let powers: Vec<Vec<BiSeries>> = u
            .iter()
            .map(|s| {
                let mut v = vec![BiSeries::one(order)];
                for k in 1..=max_deg.max(0) as usize {
                    let next = &v[k - 1] * s;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = BiSeries::zeros(order);
        for (e, c) in &self.terms {
            assert!(e.iter().all(|&x| x >= 0), "negative exponent in series evaluation");
            if (e[T1] + e[S2]) as usize > order {
                continue;
            }
            let mut term = BiSeries::monomial(*c, e[T1] as usize, e[S2] as usize, order);
            for v in 0..4 {
                if e[v] > 0 {
                    term = &term * &powers[v][e[v] as usize];
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

impl Ring for Poly {
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.push(*e, *c);
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-ONE))
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                let mut g = *e;
                for i in 0..NVARS {
                    g[i] += f[i];
                }
                out.push(g, c * d);
            }
        }
        out
    }

    fn scale(&self, c: C64) -> Self {
        if c == C64::new(0.0, 0.0) {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, d)| (*e, d * c)).collect() }
    }
}
