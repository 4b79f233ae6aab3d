//! Spherical representations π_{p,q} of Sp(n+1), their dimensions and Casimir scalars,
//! plus the few other dimension formulas the closed-form spectra need.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest weight pε₁ + qε₂ with `p ≥ q ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepLabel {
    pub p: u32,
    pub q: u32,
}

impl RepLabel {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q > p {
            return Err(Error::InvalidParameter(format!("rep label needs p >= q, got ({p},{q})")));
        }
        Ok(Self { p, q })
    }

    pub fn k(&self) -> u32 {
        self.p - self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientKind {
    Sphere,
    RealProjective,
    ComplexProjective,
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) / i stays integral at every step
        acc = acc
            .checked_mul(n as u128 - k as u128 + i)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / i;
    }
    Ok(acc)
}

fn mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

/// d_{p,q} = (p+q+2n+1)(p−q+1) / ((2n+1)(p+1)) · C(p+2n, p) · C(q+2n−1, q).
pub fn dim_pq(n: u32, label: RepLabel) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidParameter("dim_pq needs n >= 1".into()));
    }
    let (p, q, n) = (label.p as u128, label.q as u128, n as u128);
    let what = "d_{p,q}";
    let mut num = mul(p + q + 2 * n + 1, p - q + 1, what)?;
    num = mul(num, binom((p + 2 * n) as u64, p as u64)?, what)?;
    num = mul(num, binom((q + 2 * n - 1) as u64, q as u64)?, what)?;
    let den = (2 * n + 1) * (p + 1);
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

/// Eigenvalue 2p(p+2n+2) + 2q(q+2n) of the Casimir element on π_{p,q}.
pub fn casimir_scalar(n: u32, label: RepLabel) -> f64 {
    let (p, q, n) = (label.p as f64, label.q as f64, n as f64);
    2.0 * p * (p + 2.0 * n + 2.0) + 2.0 * q * (q + 2.0 * n)
}

/// All labels with `p ≤ p_max` admitted by the quotient, in lexicographic order.
pub fn spherical_reps(_n: u32, kind: QuotientKind, p_max: u32) -> Vec<RepLabel> {
    let mut out = Vec::new();
    for p in 0..=p_max {
        for q in 0..=p {
            if kind == QuotientKind::Sphere || (p - q) % 2 == 0 {
                out.push(RepLabel { p, q });
            }
        }
    }
    out
}

/// Multiplicity C(k+d, d) − C(k+d−2, d) of the k-th eigenvalue of the round S^d.
pub fn round_multiplicity(d: u32, k: u32) -> Result<u128> {
    let (d, k) = (d as u64, k as u64);
    let hi = binom(k + d, d)?;
    let lo = if k + d >= 2 { binom(k + d - 2, d)? } else { 0 };
    Ok(hi - lo)
}

/// dim of the space of harmonic polynomials of bidegree (p, q) on C^m, m ≥ 2.
pub fn unitary_bidegree_dim(m: u32, p: u32, q: u32) -> Result<u128> {
    if m < 2 {
        return Err(Error::InvalidParameter("bidegree dimension needs m >= 2".into()));
    }
    let (m, p, q) = (m as u64, p as u64, q as u64);
    let what = "bidegree dimension";
    let mut num = mul((p + q + m - 1) as u128, binom(p + m - 2, p)?, what)?;
    num = mul(num, binom(q + m - 2, q)?, what)?;
    Ok(num / (m as u128 - 1))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Weyl dimension formula in doubled ε-coordinates.
fn weyl_dim(lambda2: [i64; 4], rho2: [i64; 4], roots: &[[i64; 4]]) -> Result<u128> {
    let dot = |x: &[i64; 4], y: &[i64; 4]| -> i64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    let shifted: [i64; 4] = std::array::from_fn(|i| lambda2[i] + rho2[i]);
    let (mut num, mut den): (u128, u128) = (1, 1);
    for r in roots {
        let top = dot(&shifted, r);
        let bottom = dot(&rho2, r);
        debug_assert!(top > 0 && bottom > 0);
        num = mul(num, top as u128, "Weyl dimension")?;
        den = mul(den, bottom as u128, "Weyl dimension")?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    if den != 1 {
        return Err(Error::InvalidParameter("Weyl quotient is not integral".into()));
    }
    Ok(num)
}

fn b4_positive_roots() -> Vec<[i64; 4]> {
    let mut roots = Vec::new();
    for i in 0..4 {
        let mut e = [0; 4];
        e[i] = 1;
        roots.push(e);
        for j in i + 1..4 {
            for s in [1, -1] {
                let mut r = [0; 4];
                r[i] = 1;
                r[j] = s;
                roots.push(r);
            }
        }
    }
    roots
}

/// dim of the Spin(9) irreducible with highest weight jω₁ + lω₄.
pub fn spin9_dim(j: u32, l: u32) -> Result<u128> {
    let (j, l) = (j as i64, l as i64);
    weyl_dim([2 * j + l, l, l, l], [7, 5, 3, 1], &b4_positive_roots())
}

/// dim of the F₄ irreducible with highest weight kε₁ (k-th harmonic space of CaP²).
pub fn f4_dim(k: u32) -> Result<u128> {
    let mut roots: Vec<[i64; 4]> = b4_positive_roots()
        .into_iter()
        .map(|r| std::array::from_fn(|i| 2 * r[i]))
        .collect();
    for s2 in [1, -1] {
        for s3 in [1, -1] {
            for s4 in [1, -1] {
                roots.push([1, s2, s3, s4]);
            }
        }
    }
    weyl_dim([2 * k as i64, 0, 0, 0], [11, 5, 3, 1], &roots)
}
