//! Small dense complex solvers.

use crate::complex::{C64, ZERO};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<C64>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, a: vec![ZERO; rows * cols] }
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.a[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.at(i, j) * x[j]).sum()).collect()
    }
}

/// Gaussian elimination with partial pivoting; `rcond` bounds the pivot ratio.
pub fn solve_square(m: &Dense, b: &[C64], rcond: f64) -> Result<Vec<C64>> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut a = m.a.clone();
    let mut x = b.to_vec();
    let scale = a.iter().fold(0.0f64, |s, z| s.max(z.norm())).max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))
            .unwrap();
        if a[piv * n + col].norm() <= rcond * scale {
            return Err(Error::NonGenericParams(format!("singular {n}x{n} system at column {col}")));
        }
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            x.swap(piv, col);
        }
        for i in col + 1..n {
            let f = a[i * n + col] / a[col * n + col];
            if f != ZERO {
                for j in col..n {
                    let v = a[col * n + j];
                    a[i * n + j] -= f * v;
                }
                let v = x[col];
                x[i] -= f * v;
            }
        }
    }
    for i in (0..n).rev() {
        let s: C64 = (i + 1..n).map(|j| a[i * n + j] * x[j]).sum();
        x[i] = (x[i] - s) / a[i * n + i];
    }
    Ok(x)
}

/// Least-squares solution by Householder QR; returns `(x, residual norm)`.
pub fn least_squares(m: &Dense, b: &[C64], rcond: f64) -> Result<(Vec<C64>, f64)> {
    let (rows, cols) = (m.rows, m.cols);
    assert!(rows >= cols);
    let mut a = m.a.clone();
    let mut y = b.to_vec();
    let mut diag_max = 0.0f64;
    for k in 0..cols {
        let norm: f64 = (k..rows).map(|i| a[i * cols + k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NonGenericParams(format!("rank-deficient system at column {k}")));
        }
        let akk = a[k * cols + k];
        let phase = if akk.norm() > 0.0 { akk / akk.norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        let mut v: Vec<C64> = (k..rows).map(|i| a[i * cols + k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 > 0.0 {
            for j in k..cols {
                let dot: C64 = (k..rows).map(|i| v[i - k].conj() * a[i * cols + j]).sum();
                let f = dot * 2.0 / vnorm2;
                for i in k..rows {
                    a[i * cols + j] -= f * v[i - k];
                }
            }
            let dot: C64 = (k..rows).map(|i| v[i - k].conj() * y[i]).sum();
            let f = dot * 2.0 / vnorm2;
            for i in k..rows {
                y[i] -= f * v[i - k];
            }
        }
        diag_max = diag_max.max(a[k * cols + k].norm());
    }
    for k in 0..cols {
        if a[k * cols + k].norm() <= rcond * diag_max {
            return Err(Error::NonGenericParams(format!("rank-deficient system at column {k}")));
        }
    }
    let mut x = vec![ZERO; cols];
    for i in (0..cols).rev() {
        let s: C64 = (i + 1..cols).map(|j| a[i * cols + j] * x[j]).sum();
        x[i] = (y[i] - s) / a[i * cols + i];
    }
    let resid = y[cols..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok((x, resid))
}
