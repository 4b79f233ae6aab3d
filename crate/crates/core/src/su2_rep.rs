//! The twisted Casimir operator τ_k(−a²X₁² − b²X₂² − c²X₃²) on the (k+1)-dimensional
//! irreducible SU(2) representation and its eigenvalues ν_j^{(k)}(a, b, c).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiag;

/// Default ceiling on `k`.
pub const DEFAULT_K_CAP: usize = 10_000;

const DEGENERATE_REL: f64 = 1e-12;

/// Axis lengths of a left-invariant inner product on sp(1), sorted so that `a ≥ b ≥ c > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriAxis {
    a: f64,
    b: f64,
    c: f64,
}

impl TriAxis {
    /// Sorts the three lengths descending. Every length must be finite and positive.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for v in [x, y, z] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "axis length {v} must be finite and positive"
                )));
            }
        }
        let mut v = [x, y, z];
        v.sort_by(|p, q| q.total_cmp(p));
        Ok(Self { a: v[0], b: v[1], c: v[2] })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn squares(&self) -> [f64; 3] {
        [self.a * self.a, self.b * self.b, self.c * self.c]
    }
}

/// Sparse representation of the (k+1)×(k+1) matrix of τ_k in the standard weight basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TauMatrix {
    pub k: usize,
    /// `diag[j] = m_{j,j}`.
    pub diag: Vec<f64>,
    /// `upper[j] = m_{j,j+2}` for `0 ≤ j ≤ k−2`.
    pub upper: Vec<f64>,
    /// `lower[j] = m_{j+2,j}` for `0 ≤ j ≤ k−2`.
    pub lower: Vec<f64>,
}

impl TauMatrix {
    /// Entry `(i, j)`; zero outside the three nonzero bands.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i > self.k || j > self.k {
            return 0.0;
        }
        if i == j {
            self.diag[i]
        } else if i + 2 == j {
            self.upper[i]
        } else if j + 2 == i {
            self.lower[j]
        } else {
            0.0
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..=self.k)
            .map(|i| (0..=self.k).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// The k+1 eigenvalues of τ_k, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuSpectrum {
    pub k: usize,
    pub values: Vec<f64>,
}

/// Which evaluation path `nu_spectrum_with` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NuMethod {
    /// Closed forms when two or three axes coincide, tridiagonal blocks otherwise.
    #[default]
    Auto,
    /// Always diagonalize the parity blocks.
    Tridiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuOptions {
    pub method: NuMethod,
    pub k_cap: usize,
}

impl Default for NuOptions {
    fn default() -> Self {
        Self { method: NuMethod::Auto, k_cap: DEFAULT_K_CAP }
    }
}

/// Converts a signed index to `k`, rejecting negative values.
pub fn checked_k(k: i64) -> Result<usize> {
    usize::try_from(k).map_err(|_| Error::NegativeK(k))
}

fn diag_entry(k: usize, j: usize, a2: f64, bc2: f64) -> f64 {
    let (kf, jf) = (k as f64, j as f64);
    let w = kf - 2.0 * jf;
    w * w * a2 + ((2.0 * jf + 1.0) * kf - 2.0 * jf * jf) * bc2
}

pub fn tau_matrix(k: usize, axes: TriAxis) -> TauMatrix {
    let [a2, b2, c2] = axes.squares();
    let diag = (0..=k).map(|j| diag_entry(k, j, a2, b2 + c2)).collect();
    let diff = b2 - c2;
    let band = k.saturating_sub(1);
    let upper = (0..band)
        .map(|i| {
            let j = (i + 2) as f64;
            -(j - 1.0) * j * diff
        })
        .collect();
    let lower = (0..band)
        .map(|j| {
            let (kf, jf) = (k as f64, j as f64);
            -(kf - 1.0 - jf) * (kf - jf) * diff
        })
        .collect();
    TauMatrix { k, diag, upper, lower }
}

pub fn nu_spectrum(k: usize, axes: TriAxis) -> Result<NuSpectrum> {
    nu_spectrum_with(k, axes, NuOptions::default())
}

pub fn nu_spectrum_with(k: usize, axes: TriAxis, opts: NuOptions) -> Result<NuSpectrum> {
    if k > opts.k_cap {
        return Err(Error::KTooLarge { k, cap: opts.k_cap });
    }
    let TriAxis { a, b, c } = axes;
    let values = match opts.method {
        NuMethod::Auto if a - c <= DEGENERATE_REL * a => {
            vec![(k * (k + 2)) as f64 * a * a; k + 1]
        }
        NuMethod::Auto if b - c <= DEGENERATE_REL * b => closed_form_two_equal(k, a, b),
        NuMethod::Auto if a - b <= DEGENERATE_REL * a => closed_form_two_equal(k, c, a),
        _ => parity_blocks(k, axes)?,
    };
    Ok(NuSpectrum { k, values })
}

/// ν^{(k)}(x, y, y) in closed form, sorted.
fn closed_form_two_equal(k: usize, x: f64, y: f64) -> Vec<f64> {
    let (x2, y2, kf) = (x * x, y * y, k as f64);
    let mut v: Vec<f64> = (1..=k + 1)
        .map(|j| {
            let i = (j - 1) as f64;
            let w = kf - 2.0 * i;
            w * w * x2 + 2.0 * ((2.0 * i + 1.0) * kf - 2.0 * i * i) * y2
        })
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

fn parity_blocks(k: usize, axes: TriAxis) -> Result<Vec<f64>> {
    let [a2, b2, c2] = axes.squares();
    let diff = b2 - c2;
    let kf = k as f64;
    let mut out = Vec::with_capacity(k + 1);
    for start in 0..=1usize.min(k) {
        let idx: Vec<usize> = (start..=k).step_by(2).collect();
        let diag: Vec<f64> = idx.iter().map(|&j| diag_entry(k, j, a2, b2 + c2)).collect();
        let off: Vec<f64> = idx
            .iter()
            .take(idx.len().saturating_sub(1))
            .map(|&i| {
                let fi = i as f64;
                let left = ((fi + 1.0) * (fi + 2.0)).sqrt();
                let right = ((kf - 1.0 - fi) * (kf - fi)).sqrt();
                -diff * left * right
            })
            .collect();
        out.extend(tridiag::eigenvalues(&diag, &off)?);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Lower bound 2kb² + k²c², raised to a² + (2k−1)b² + k²c² for odd k.
pub fn nu_lower_bound(k: usize, axes: TriAxis) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let [a2, b2, c2] = axes.squares();
    let kf = k as f64;
    let base = 2.0 * kf * b2 + kf * kf * c2;
    if k % 2 == 1 {
        base.max(a2 + (2.0 * kf - 1.0) * b2 + kf * kf * c2)
    } else {
        base
    }
}

/// β(a,b,c) = σ₁ − √(σ₁² − 3σ₂) with σ_i elementary symmetric in (a², b², c²).
pub fn beta(axes: TriAxis) -> f64 {
    let [x, y, z] = axes.squares();
    let s1 = x + y + z;
    let spread = 0.5 * ((x - y).powi(2) + (x - z).powi(2) + (y - z).powi(2));
    s1 - spread.sqrt()
}

/// Smallest eigenvalue of τ₄, equal to 8β(a,b,c).
pub fn nu1_quartic(axes: TriAxis) -> f64 {
    8.0 * beta(axes)
}
