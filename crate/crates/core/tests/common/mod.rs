#![allow(dead_code)]

use cross_spec::spectrum::SpectrumSlice;
use nalgebra::{DMatrix, SymmetricEigen};

/// Exact binomial coefficient by the multiplicative recurrence.
pub fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Harmonic polynomials of degree k on S^d.
pub fn harmonic_dim(d: u32, k: u32) -> u128 {
    let (d, k) = (d as u64, k as u64);
    choose(k + d, d) - if k >= 2 { choose(k + d - 2, d) } else { 0 }
}

fn ln_fact(n: usize) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

/// τ_k written out densely from its entries, then symmetrized by D = diag(√(j!(k−j)!)).
pub fn dense_tau(k: usize, a: f64, b: f64, c: f64) -> DMatrix<f64> {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let kf = k as f64;
    let mut m = DMatrix::<f64>::zeros(k + 1, k + 1);
    for j in 0..=k {
        let jf = j as f64;
        m[(j, j)] = (kf - 2.0 * jf).powi(2) * a2 + ((2.0 * jf + 1.0) * kf - 2.0 * jf * jf) * (b2 + c2);
        if j >= 2 {
            m[(j - 2, j)] = -(jf - 1.0) * jf * (b2 - c2);
        }
        if j + 2 <= k {
            m[(j + 2, j)] = -(kf - jf - 1.0) * (kf - jf) * (b2 - c2);
        }
    }
    let ln_d: Vec<f64> = (0..=k).map(|j| 0.5 * (ln_fact(j) + ln_fact(k - j))).collect();
    DMatrix::from_fn(k + 1, k + 1, |i, j| m[(i, j)] * (ln_d[i] - ln_d[j]).exp())
}

pub fn dense_nu(k: usize, a: f64, b: f64, c: f64) -> Vec<f64> {
    let s = dense_tau(k, a, b, c);
    let sym = (&s + s.transpose()) * 0.5;
    let mut v: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

/// Level-by-level comparison; `Err` describes the first mismatch.
pub fn same_levels(a: &SpectrumSlice, b: &SpectrumSlice, tol: f64) -> Result<(), String> {
    if a.entries.len() != b.entries.len() {
        return Err(format!("{} levels vs {}", a.entries.len(), b.entries.len()));
    }
    for (x, y) in a.entries.iter().zip(&b.entries) {
        if !rel_close(x.value, y.value, tol) || x.multiplicity != y.multiplicity {
            return Err(format!(
                "({}, {}) vs ({}, {})",
                x.value, x.multiplicity, y.value, y.multiplicity
            ));
        }
    }
    Ok(())
}
