//! Eigenvalues of real symmetric tridiagonal matrices by the implicit-shift QL method.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples rows `i` and `i + 1`), sorted ascending.
///
/// Deflation happens when `|e_m| <= eps * (|d_m| + |d_{m+1}|)`.
pub fn eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::InvalidParameter(format!(
            "off-diagonal length {} does not match dimension {n}",
            off.len()
        )));
    }
    if diag.iter().chain(off).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite matrix entry".into()));
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence { size: n });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0_f64, 1.0_f64, 0.0_f64);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoConvergence { size: n });
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_is_returned_sorted() {
        let v = eigenvalues(&[3.0, 1.0, 2.0], &[0.0, 0.0]).unwrap();
        assert_eq!(v, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two() {
        // [[2, -1], [-1, 2]] has eigenvalues 1 and 3
        let v = eigenvalues(&[2.0, 2.0], &[-1.0]).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn discrete_laplacian() {
        let n = 40;
        let v = eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (k, x) in v.iter().enumerate() {
            let theta = (k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
            let exact = 2.0 - 2.0 * theta.cos();
            assert!((x - exact).abs() < 1e-12, "{k}: {x} vs {exact}");
        }
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(eigenvalues(&[1.0, 2.0], &[]).is_err());
        assert!(eigenvalues(&[f64::NAN], &[]).is_err());
        assert!(eigenvalues(&[], &[]).unwrap().is_empty());
    }
}
