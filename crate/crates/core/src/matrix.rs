//! Dense 2×2 complex matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{CxJson, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// A 2×2 complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2 {
    pub m: [[C64; 2]; 2],
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 { m: [[ONE, ZERO], [ZERO, ONE]] };
    pub const ZERO: Matrix2 = Matrix2 { m: [[ZERO, ZERO], [ZERO, ZERO]] };

    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Matrix2 { m: [[a, b], [c, d]] }
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Self::new(a, ZERO, ZERO, d)
    }

    /// Matrix whose columns are `c0` and `c1`.
    pub fn from_cols(c0: [C64; 2], c1: [C64; 2]) -> Self {
        Self::new(c0[0], c1[0], c0[1], c1[1])
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[i][j]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = self.m;
        Self::new(s * m[0][0], s * m[0][1], s * m[1][0], s * m[1][1])
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let size = self.norm();
        if d.norm() <= 1e-300 || d.norm() < 1e-14 * size * size {
            return Err(Error::InvalidArgument(format!("singular matrix (det = {d})")));
        }
        let m = self.m;
        Ok(Self::new(m[1][1], -m[0][1], -m[1][0], m[0][0]).scale(ONE / d))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0, |a, z| a.max(z.norm()))
    }

    /// Distance to the identity in the Frobenius norm.
    pub fn dist_identity(&self) -> f64 {
        (*self - Self::IDENTITY).norm()
    }

    pub fn commutator(&self, other: &Matrix2) -> Matrix2 {
        *self * *other - *other * *self
    }

    /// Both eigenvalues, ordered by real part then imaginary part.
    pub fn eigenvalues(&self) -> [C64; 2] {
        let half_tr = self.trace() * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let (a, b) = (half_tr + disc, half_tr - disc);
        // recompute the smaller root from the product to avoid cancellation
        let (big, small) = if a.norm() >= b.norm() { (a, b) } else { (b, a) };
        let small = if big.norm() > 0.0 { self.det() / big } else { small };
        let mut ev = [big, small];
        ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        ev
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_lower_unipotent(&self) -> bool {
        self.m[0][0] == ONE && self.m[1][1] == ONE && self.m[0][1] == ZERO
    }

    pub fn is_upper_unipotent(&self) -> bool {
        self.m[0][0] == ONE && self.m[1][1] == ONE && self.m[1][0] == ZERO
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            v[0] * self.m[0][0] + v[1] * self.m[1][0],
            v[0] * self.m[0][1] + v[1] * self.m[1][1],
        ]
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Matrix2>>(ms: I) -> Matrix2 {
        ms.into_iter().fold(Self::IDENTITY, |acc, m| acc * *m)
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, o: Matrix2) -> Matrix2 {
        let (a, b) = (self.m, o.m);
        Matrix2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: Matrix2) -> Matrix2 {
        self + (-o)
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        self.scale(-ONE)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        let (a, b) = (self.m, o.m);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

#[derive(Serialize, Deserialize)]
struct RowsJson {
    rows: [[CxJson; 2]; 2],
}

impl Serialize for Matrix2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.m.map(|row| row.map(CxJson::from));
        RowsJson { rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RowsJson::deserialize(d)?;
        Ok(Matrix2 { m: r.rows.map(|row| row.map(C64::from)) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::c;

    fn sample() -> Matrix2 {
        Matrix2::new(c(1.0, 2.0), c(0.5, -1.0), c(-0.3, 0.2), c(2.0, 0.1))
    }

    #[test]
    fn inverse_round_trip() {
        let a = sample();
        let p = a * a.inverse().unwrap();
        assert!(p.dist_identity() < 1e-14);
    }

    #[test]
    fn eigenvalues_match_trace_and_det() {
        let a = sample();
        let [l1, l2] = a.eigenvalues();
        assert!((l1 + l2 - a.trace()).norm() < 1e-14);
        assert!((l1 * l2 - a.det()).norm() < 1e-14);
    }

    #[test]
    fn json_shape() {
        let a = Matrix2::diag(c(1.0, 0.0), c(0.0, -1.0));
        let v = serde_json::to_value(a).unwrap();
        assert_eq!(v["rows"][1][1]["im"], -1.0);
        let back: Matrix2 = serde_json::from_value(v).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn singular_inverse_fails() {
        let a = Matrix2::new(ONE, ONE, ONE, ONE);
        assert!(a.inverse().is_err());
    }
}
