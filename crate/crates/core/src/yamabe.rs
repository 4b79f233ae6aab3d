//! Yamabe stability of homogeneous CROSS metrics, the stability boundary Σ_n and
//! bifurcation crossings along parameter curves.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{self, SymTriple};
use crate::metric::MetricSpec;
use crate::spectrum::{self, MergeTol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Classification {
    StableNondegenerate,
    Degenerate,
    Unstable { morse_index: u128 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub lambda1: f64,
    pub lambda1_multiplicity: u128,
    pub scal: f64,
    pub dimension: u32,
    /// λ₁ − scal/(dim − 1).
    pub jacobi_gap: f64,
    pub classification: Classification,
    /// Coalesced multiplicity of the eigenvalue at scal/(dim − 1), zero if none.
    pub kernel_dimension: u128,
}

/// Band |gap| ≤ 1e−9·max(1, scal/(dim−1)) counted as degenerate.
pub fn degeneracy_tol(threshold: f64) -> f64 {
    1e-9 * threshold.max(1.0)
}

fn threshold(spec: &MetricSpec) -> f64 {
    geometry::scal(spec) / (spec.dimension() as f64 - 1.0)
}

/// p(x,y,z) = x²+y²+z² − 2(xy+xz+yz) + 2n(x+y+z)xyz + 8(n²+n+1)xyz.
pub fn stability_poly(n: u32, x: f64, y: f64, z: f64) -> f64 {
    let n = n as f64;
    x * x + y * y + z * z - 2.0 * (x * y + x * z + y * z)
        + 2.0 * n * (x + y + z) * x * y * z
        + 8.0 * (n * n + n + 1.0) * x * y * z
}

pub fn classify(spec: &MetricSpec) -> Result<StabilityReport> {
    let l1 = spectrum::lambda1(spec)?;
    let scal = geometry::scal(spec);
    let thr = threshold(spec);
    let gap = l1.value - thr;
    let tol = degeneracy_tol(thr);
    let (classification, kernel_dimension) = if gap > tol {
        (Classification::StableNondegenerate, 0)
    } else if gap >= -tol {
        (Classification::Degenerate, l1.multiplicity)
    } else {
        let m = morse_index(spec)?;
        (Classification::Unstable { morse_index: m.index }, m.kernel)
    };
    Ok(StabilityReport {
        lambda1: l1.value,
        lambda1_multiplicity: l1.multiplicity,
        scal,
        dimension: spec.dimension(),
        jacobi_gap: gap,
        classification,
        kernel_dimension,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseCount {
    /// Eigenvalues strictly below scal/(dim − 1), with multiplicity, zero excluded.
    pub index: u128,
    /// Multiplicity of eigenvalues within tolerance of scal/(dim − 1).
    pub kernel: u128,
}

pub fn morse_index(spec: &MetricSpec) -> Result<MorseCount> {
    let thr = threshold(spec);
    if thr <= 0.0 {
        return Ok(MorseCount { index: 0, kernel: 0 });
    }
    let tol = degeneracy_tol(thr);
    let slice = spectrum::truncated_spectrum(spec, thr + tol)?;
    let mut count = MorseCount { index: 0, kernel: 0 };
    for level in slice.entries.iter().filter(|l| l.value > MergeTol::default().abs) {
        if (level.value - thr).abs() <= tol {
            count.kernel += level.multiplicity;
        } else if level.value < thr {
            count.index += level.multiplicity;
        }
    }
    Ok(count)
}

/// Sampled points of Σ_n = p⁻¹(0) in (t₁, t₂, t₃), with (x, y, z) = (t₁², t₂², t₃²).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryMesh {
    pub n: u32,
    pub points: Vec<MeshPoint>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshPoint {
    pub t: [f64; 3],
    pub xyz: [f64; 3],
    pub residual: f64,
}

impl BoundaryMesh {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t1,t2,t3,x,y,z,p_residual\n");
        for p in &self.points {
            let [t1, t2, t3] = p.t;
            let [x, y, z] = p.xyz;
            let _ = writeln!(
                s,
                "{t1:.12e},{t2:.12e},{t3:.12e},{x:.12e},{y:.12e},{z:.12e},{:.12e}",
                p.residual
            );
        }
        s
    }

    /// Wavefront OBJ vertex list in t-coordinates.
    pub fn to_obj(&self) -> String {
        let mut s = format!("# stability boundary, n = {}\n", self.n);
        for p in &self.points {
            let _ = writeln!(s, "v {:.12e} {:.12e} {:.12e}", p.t[0], p.t[1], p.t[2]);
        }
        s
    }
}

/// Residual bound 1e−9·max(1, x²+y²+z²)² for mesh points.
pub fn mesh_residual_bound(xyz: [f64; 3]) -> f64 {
    let q: f64 = xyz.iter().map(|v| v * v).sum();
    1e-9 * q.max(1.0).powi(2)
}

/// Coefficients (A, B, C) of Δ/σ₃ = Aσ₃² + Bσ₃ + C along the graph σ₂(σ₁, σ₃).
pub fn sigma3_quadratic(n: u32, s1: f64) -> (f64, f64, f64) {
    let nf = n as f64;
    let u = s1 * s1 / 4.0;
    let v = nf / 2.0 * s1 + 2.0 * (nf * nf + nf + 1.0);
    let a = -4.0 * v.powi(3);
    let b = -8.0 * u * v * v - 27.0 + 18.0 * s1 * v;
    let c = s1.powi(3) * (0.5 - s1 * v / 4.0);
    (a, b, c)
}

/// σ₂ on Σ_n: σ₁²/4 + (n/2)σ₁σ₃ + 2(n²+n+1)σ₃.
pub fn sigma2_on_boundary(n: u32, s1: f64, s3: f64) -> f64 {
    let nf = n as f64;
    s1 * s1 / 4.0 + nf / 2.0 * s1 * s3 + 2.0 * (nf * nf + nf + 1.0) * s3
}

fn sigma3_interval(n: u32, s1: f64) -> Option<(f64, f64)> {
    let (a, b, c) = sigma3_quadratic(n, s1);
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let (r1, r2) = ((-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a));
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    (hi > 0.0).then_some((lo.max(0.0), hi))
}

pub fn boundary_mesh(n: u32, resolution: usize) -> BoundaryMesh {
    let s1_hi: f64 = 9.0 / 8.0;
    let s1_lo: f64 = 1e-3;
    let rows: Vec<Vec<MeshPoint>> = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let f = (i as f64 + 0.5) / resolution as f64;
            let s1 = (s1_lo.ln() + f * (s1_hi.ln() - s1_lo.ln())).exp();
            let mut row = Vec::new();
            let Some((lo, hi)) = sigma3_interval(n, s1) else { return row };
            for j in 0..resolution {
                let s3 = lo + (hi - lo) * (j as f64 + 0.5) / resolution as f64;
                let trip = SymTriple { s1, s2: sigma2_on_boundary(n, s1, s3), s3 };
                let Ok(r) = trip.roots() else { continue };
                push_orbit(n, r, &mut row);
            }
            row
        })
        .collect();
    let points: Vec<MeshPoint> = rows.into_iter().flatten().collect();
    let warning = points
        .is_empty()
        .then(|| format!("resolution {resolution} produced no boundary points"));
    BoundaryMesh { n, points, warning }
}

fn push_orbit(n: u32, r: [f64; 3], out: &mut Vec<MeshPoint>) {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut seen: Vec<[f64; 3]> = Vec::with_capacity(6);
    for p in PERMS {
        let xyz = [r[p[0]], r[p[1]], r[p[2]]];
        if seen.contains(&xyz) {
            continue;
        }
        seen.push(xyz);
        let residual = stability_poly(n, xyz[0], xyz[1], xyz[2]);
        if residual.abs() > mesh_residual_bound(xyz) {
            continue;
        }
        out.push(MeshPoint { t: xyz.map(f64::sqrt), xyz, residual });
    }
}

/// A sign change of p between samples `index` and `index + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub index: usize,
    /// Position of the refined root along the segment, in [0, 1].
    pub fraction: f64,
    pub t: [f64; 3],
    pub residual: f64,
}

fn poly_at(n: u32, t: [f64; 3]) -> f64 {
    stability_poly(n, t[0] * t[0], t[1] * t[1], t[2] * t[2])
}

/// Crossings of ∂S_n along a piecewise-linear curve in (t₁, t₂, t₃).
pub fn bifurcation_scan(n: u32, curve: &[[f64; 3]]) -> Vec<Crossing> {
    let mut out = Vec::new();
    for (i, w) in curve.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let (pa, pb) = (poly_at(n, a), poly_at(n, b));
        if (pa > 0.0) == (pb > 0.0) {
            continue;
        }
        let at = |u: f64| -> [f64; 3] { std::array::from_fn(|k| a[k] + u * (b[k] - a[k])) };
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        let mut mid = 0.5;
        let mut pm = poly_at(n, at(mid));
        for _ in 0..60 {
            mid = 0.5 * (lo + hi);
            pm = poly_at(n, at(mid));
            if pm.abs() <= 1e-10 {
                break;
            }
            if (pm > 0.0) == (pa > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(Crossing { index: i, fraction: mid, t: at(mid), residual: pm });
    }
    out
}

/// ℓ_n = (√((n³+n²+2n+1)(n+1)) − (n²+n+1)) / n.
pub fn ell_n(n: u32) -> f64 {
    let n = n as f64;
    (((n.powi(3) + n * n + 2.0 * n + 1.0) * (n + 1.0)).sqrt() - (n * n + n + 1.0)) / n
}

/// Threshold t_* above which ȟ(t) on CP^{2n+1} is a stable nondegenerate Yamabe metric.
pub fn cp_critical_t(n: u32) -> f64 {
    let n = n as f64;
    let m = 2.0 * n * n + n + 1.0;
    (((m * m + 4.0 * n).sqrt() - m) / (2.0 * n)).sqrt()
}

/// Threshold √((√19 − 4)/2) for k(t) on S^15 and RP^15.
pub fn spin9_critical_t() -> f64 {
    ((19f64.sqrt() - 4.0) / 2.0).sqrt()
}

/// x with p(x, x, x) = 0, x > 0: root of 6n x² + 8(n²+n+1)x − 3.
pub fn diagonal_root(n: u32) -> f64 {
    let nf = n as f64;
    let m = 8.0 * (nf * nf + nf + 1.0);
    if n == 0 {
        return 3.0 / m;
    }
    (-m + (m * m + 72.0 * nf).sqrt()) / (12.0 * nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Family, Quotient};

    fn quat(n: u32, t: [f64; 3], q: Quotient) -> MetricSpec {
        MetricSpec::new(Family::QuatH { n, t }, q, 1.0).unwrap()
    }

    #[test]
    fn poly_examples() {
        assert_eq!(stability_poly(1, 1.0, 1.0, 1.0), 27.0);
        for n in 1..4 {
            assert_eq!(stability_poly(n, 0.7, 0.7, 0.0), 0.0);
        }
        for z in [0.1, 0.5, 2.0] {
            assert!((stability_poly(1, 1.0, 1.0, z) - (3.0 * z * z + 24.0 * z)).abs() < 1e-12);
        }
    }

    #[test]
    fn classify_examples() {
        let r = classify(&quat(1, [1.0; 3], Quotient::Simple)).unwrap();
        assert_eq!(r.classification, Classification::Degenerate);
        assert_eq!(r.kernel_dimension, 8);
        let r = classify(&quat(1, [1.0; 3], Quotient::Z2)).unwrap();
        assert_eq!(r.classification, Classification::StableNondegenerate);
        let r = classify(&quat(1, [0.1; 3], Quotient::Simple)).unwrap();
        assert!(stability_poly(1, 0.01, 0.01, 0.01) < 0.0);
        match r.classification {
            Classification::Unstable { morse_index } => assert!(morse_index >= 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn morse_examples() {
        let m = morse_index(&quat(1, [1.0; 3], Quotient::Simple)).unwrap();
        assert_eq!(m, MorseCount { index: 0, kernel: 8 });
        let stable = quat(1, [1.0; 3], Quotient::Z2);
        assert_eq!(morse_index(&stable).unwrap().index, 0);
        let mut last = 0;
        for t in [0.5, 0.2, 0.1, 0.05] {
            let spec = MetricSpec::sphere(Family::CPCheckH { n: 1, t }).unwrap();
            let m = morse_index(&spec).unwrap().index;
            assert!(m >= last, "t={t}: {m} < {last}");
            last = m;
        }
        assert!(last > 100);
    }

    #[test]
    fn diagonal_point() {
        let x = diagonal_root(1);
        assert!((x - (-8.0 + 72f64.sqrt()) / 4.0).abs() < 1e-15);
        assert!(stability_poly(1, x, x, x).abs() < 1e-12);
        assert!((x.sqrt() - 0.34831).abs() < 1e-5);
    }

    #[test]
    fn ell_examples() {
        assert!((ell_n(1) - (10f64.sqrt() - 3.0)).abs() < 1e-15);
        assert!((ell_n(2) - (51f64.sqrt() - 7.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn critical_t_examples() {
        assert!((cp_critical_t(1) - ((20f64.sqrt() - 4.0) / 2.0).sqrt()).abs() < 1e-15);
        assert!((cp_critical_t(1) - 0.485868).abs() < 1e-6);
        for n in 1..=3 {
            let ts = cp_critical_t(n);
            let above = MetricSpec::sphere(Family::CPCheckH { n, t: ts + 1e-3 }).unwrap();
            let below = MetricSpec::sphere(Family::CPCheckH { n, t: ts - 1e-3 }).unwrap();
            assert_eq!(classify(&above).unwrap().classification, Classification::StableNondegenerate);
            assert!(matches!(classify(&below).unwrap().classification, Classification::Unstable { .. }));
        }
        assert!((spin9_critical_t() - 0.4236).abs() < 1e-4);
    }

    #[test]
    fn mesh_points_lie_on_boundary() {
        let mesh = boundary_mesh(1, 24);
        assert!(mesh.warning.is_none());
        assert!(mesh.points.len() > 100);
        for p in &mesh.points {
            assert!(p.residual.abs() <= mesh_residual_bound(p.xyz));
            assert!(p.xyz.iter().all(|&v| v > 0.0 && v < 9.0 / 8.0));
        }
        assert!(boundary_mesh(1, 0).warning.is_some());
        let csv = mesh.to_csv();
        assert!(csv.starts_with("t1,t2,t3,x,y,z,p_residual\n"));
        assert!(mesh.to_obj().lines().nth(1).unwrap().starts_with("v "));
    }

    #[test]
    fn quadratic_matches_direct_discriminant() {
        for n in 1..=3 {
            for s1 in [0.05, 0.3, 0.9, 1.1] {
                let (a, b, c) = sigma3_quadratic(n, s1);
                for s3 in [1e-4, 1e-3, 0.01] {
                    let trip = SymTriple { s1, s2: sigma2_on_boundary(n, s1, s3), s3 };
                    let direct = trip.discriminant() / s3;
                    let quad = a * s3 * s3 + b * s3 + c;
                    assert!((direct - quad).abs() <= 1e-10 * direct.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn scan_examples() {
        let diag: Vec<[f64; 3]> = (0..=90).map(|i| [1.0 - 0.01 * i as f64; 3]).collect();
        let c = bifurcation_scan(1, &diag);
        assert_eq!(c.len(), 1);
        assert!((c[0].t[0] - diagonal_root(1).sqrt()).abs() < 1e-6);
        let wide: Vec<[f64; 3]> = (0..50).map(|i| [2.0 + 0.1 * i as f64, 2.0, 3.0]).collect();
        assert!(bifurcation_scan(1, &wide).is_empty());
        assert!(bifurcation_scan(1, &[[0.3, 0.5, 0.7]; 10]).is_empty());
    }
}
