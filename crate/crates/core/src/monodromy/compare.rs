//! Basis-independent comparison of matrix sets.

use serde::Serialize;

use crate::complex::{rel_diff, C64};
use crate::matrix::Matrix2;

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub max_deviation: f64,
    /// `(invariant, deviation)` for every compared quantity.
    pub entries: Vec<(String, f64)>,
}

fn eig_dev(a: [C64; 2], b: [C64; 2]) -> f64 {
    let straight = rel_diff(a[0], b[0]).max(rel_diff(a[1], b[1]));
    let swapped = rel_diff(a[0], b[1]).max(rel_diff(a[1], b[0]));
    straight.min(swapped)
}

/// Compares traces, determinants, eigenvalues and pairwise product traces of
/// two labeled sets. Labels are matched by position.
pub fn compare_monodromy(a: &[(&str, Matrix2)], b: &[(&str, Matrix2)]) -> ComparisonReport {
    let mut entries = Vec::new();
    for ((name, x), (_, y)) in a.iter().zip(b) {
        entries.push((format!("tr {name}"), rel_diff(x.trace(), y.trace())));
        entries.push((format!("det {name}"), rel_diff(x.det(), y.det())));
        entries.push((format!("eig {name}"), eig_dev(x.eigenvalues(), y.eigenvalues())));
    }
    for i in 0..a.len().min(b.len()) {
        for j in i + 1..a.len().min(b.len()) {
            let ta = (a[i].1 * a[j].1).trace();
            let tb = (b[i].1 * b[j].1).trace();
            entries.push((format!("tr {}·{}", a[i].0, a[j].0), rel_diff(ta, tb)));
        }
    }
    let max_deviation = entries.iter().map(|e| e.1).fold(0.0, f64::max);
    ComparisonReport { max_deviation, entries }
}
