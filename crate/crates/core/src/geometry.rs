//! Scalar curvature and volume of homogeneous CROSS metrics, and the elementary symmetric
//! chart (σ₁, σ₂, σ₃) of the axis squares.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{ABCSParams, Family, FsSpace, MetricSpec, Quotient};
use crate::su2_rep::TriAxis;

/// π^e / m!, by direct product for small `m` and through ln Γ otherwise.
pub fn pi_pow_over_factorial(e: f64, m: u32) -> f64 {
    if m <= 15 {
        let fact: f64 = (1..=m).map(f64::from).product();
        PI.powf(e) / fact
    } else {
        (e * PI.ln() - libm::lgamma(m as f64 + 1.0)).exp()
    }
}

/// Volume 2π^{(d+1)/2} / Γ((d+1)/2) of the unit round S^d.
pub fn round_sphere_volume(d: u32) -> f64 {
    let h = (d as f64 + 1.0) / 2.0;
    2.0 * (h * PI.ln() - libm::lgamma(h)).exp()
}

pub fn scal(spec: &MetricSpec) -> f64 {
    let unscaled = match spec.family() {
        Family::Round { d } => {
            let d = d as f64;
            d * (d - 1.0)
        }
        Family::BergerG { n, t } => {
            let n = n as f64;
            2.0 * n * (2.0 * n + 2.0 - t * t)
        }
        Family::QuatH { n, t } => {
            let n = n as f64;
            let [x, y, z] = t.map(|v| v * v);
            16.0 * n * (n + 2.0) + 4.0 * (1.0 / x + 1.0 / y + 1.0 / z)
                - 2.0 * (x / (y * z) + y / (x * z) + z / (x * y))
                - 4.0 * n * (x + y + z)
        }
        Family::Spin9K { t } => 14.0 * (3.0 / (t * t) + 16.0 - 4.0 * t * t),
        Family::CPCheckH { n, t } => {
            let n = n as f64;
            8.0 / (t * t) + 16.0 * n * (n + 2.0) - 8.0 * n * t * t
        }
        Family::FubiniStudy(FsSpace::Complex(n)) => {
            let n = n as f64;
            4.0 * n * (n + 1.0)
        }
        Family::FubiniStudy(FsSpace::Quaternionic(n)) => {
            let n = n as f64;
            16.0 * n * (n + 2.0)
        }
        Family::FubiniStudy(FsSpace::Cayley) => 576.0,
    };
    unscaled / spec.scale()
}

pub fn volume(spec: &MetricSpec) -> f64 {
    let unscaled = match spec.family() {
        Family::Round { d } => round_sphere_volume(d),
        Family::BergerG { n, t } => 2.0 * pi_pow_over_factorial(n as f64 + 1.0, n) * t,
        Family::QuatH { n, t } => {
            2.0 * pi_pow_over_factorial(2.0 * n as f64 + 2.0, 2 * n + 1) * t[0] * t[1] * t[2]
        }
        Family::Spin9K { t } => 2.0 * pi_pow_over_factorial(8.0, 7) * t.powi(7),
        Family::CPCheckH { n, t } => pi_pow_over_factorial(2.0 * n as f64 + 1.0, 2 * n + 1) * t * t,
        Family::FubiniStudy(FsSpace::Complex(n)) => pi_pow_over_factorial(n as f64, n),
        Family::FubiniStudy(FsSpace::Quaternionic(n)) => {
            pi_pow_over_factorial(2.0 * n as f64, 2 * n + 1)
        }
        Family::FubiniStudy(FsSpace::Cayley) => 6.0 * pi_pow_over_factorial(8.0, 11),
    };
    let halved = if spec.quotient() == Quotient::Z2 { 0.5 } else { 1.0 };
    unscaled * halved * spec.scale().powf(spec.dimension() as f64 / 2.0)
}

/// Elementary symmetric polynomials of (a², b², c²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymTriple {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl SymTriple {
    /// Δ = σ₁²σ₂² − 4σ₂³ − 4σ₁³σ₃ − 27σ₃² + 18σ₁σ₂σ₃.
    pub fn discriminant(&self) -> f64 {
        let SymTriple { s1, s2, s3 } = *self;
        s1 * s1 * s2 * s2 - 4.0 * s2.powi(3) - 4.0 * s1.powi(3) * s3 - 27.0 * s3 * s3
            + 18.0 * s1 * s2 * s3
    }

    /// Roots of r³ − σ₁r² + σ₂r − σ₃, descending.
    pub fn roots(&self) -> Result<[f64; 3]> {
        let SymTriple { s1, s2, s3 } = *self;
        if ![s1, s2, s3].iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::CubicInversion(format!("nonpositive symmetric triple {self:?}")));
        }
        let scale = s1 * s1 * s1;
        if self.discriminant() < -1e-10 * scale * scale {
            return Err(Error::CubicInversion(format!("negative discriminant for {self:?}")));
        }
        let shift = s1 / 3.0;
        let p = s2 - s1 * s1 / 3.0;
        let q = -2.0 * s1.powi(3) / 27.0 + s1 * s2 / 3.0 - s3;
        let mut r = if p.abs() <= 1e-15 * s1 * s1 {
            [shift; 3]
        } else if p > 0.0 {
            return Err(Error::CubicInversion(format!("complex roots for {self:?}")));
        } else {
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            std::array::from_fn(|k| shift + m * (theta - 2.0 * PI * k as f64 / 3.0).cos())
        };
        let f = |x: f64| ((x - s1) * x + s2) * x - s3;
        let df = |x: f64| (3.0 * x - 2.0 * s1) * x + s2;
        for x in r.iter_mut() {
            for _ in 0..3 {
                let d = df(*x);
                if d.abs() <= 1e-8 * s1 * s1 {
                    break;
                }
                let step = f(*x) / d;
                if !step.is_finite() || step.abs() > 1e-6 * s1 {
                    break;
                }
                *x -= step;
            }
        }
        r.sort_by(|a, b| b.total_cmp(a));
        if r[2] <= 0.0 {
            return Err(Error::CubicInversion(format!("nonpositive root for {self:?}")));
        }
        let resid = r.iter().map(|&x| f(x).abs()).fold(0.0, f64::max);
        if resid > 1e-12 * scale.max(1.0) {
            return Err(Error::CubicInversion(format!("residual {resid:e} for {self:?}")));
        }
        Ok(r)
    }

    /// Axes (a, b, c) with the given symmetric functions of their squares.
    pub fn inverse(&self) -> Result<TriAxis> {
        let [x, y, z] = self.roots()?;
        TriAxis::new(x.sqrt(), y.sqrt(), z.sqrt())
    }
}

pub fn sym_triple(axes: TriAxis) -> SymTriple {
    sym_of_squares(axes.squares())
}

/// σ₁, σ₂, σ₃ of three numbers.
pub fn sym_of_squares([x, y, z]: [f64; 3]) -> SymTriple {
    SymTriple { s1: x + y + z, s2: x * y + x * z + y * z, s3: x * y * z }
}

/// Vol(S^{4n+3}, g_{(a,b,c,s)}) = 2π^{2n+2} / ((2n+1)! · 2√(2σ₃) · s^{4n}).
pub fn volume_abcs(n: u32, p: ABCSParams) -> f64 {
    let s3 = sym_triple(p.axes()).s3;
    2.0 * pi_pow_over_factorial(2.0 * n as f64 + 2.0, 2 * n + 1)
        / (2.0 * (2.0 * s3).sqrt() * p.s.powi(4 * n as i32))
}

/// scal(S^{4n+3}, g_{(a,b,c,s)}) = 16n(n+2)s² + 16σ₁ − 2nσ₂s⁴/σ₃ − 4σ₂²/σ₃.
pub fn scal_abcs(n: u32, p: ABCSParams) -> f64 {
    let SymTriple { s1, s2, s3 } = sym_triple(p.axes());
    let (n, s2s) = (n as f64, p.s * p.s);
    16.0 * n * (n + 2.0) * s2s + 16.0 * s1 - 2.0 * n * s2 * s2s * s2s / s3 - 4.0 * s2 * s2 / s3
}
