//! Cell-by-cell regression of the first-eigenvalue, curvature, volume and Yamabe stability
//! tables for homogeneous CROSS metrics.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::cli::text::{format_metric, parse_metric};
use crate::error::{Error, Result};
use crate::geometry;
use crate::metric::{self, AbcsForm, Family, FsSpace, MetricSpec, Quotient};
use crate::spectrum;
use crate::yamabe::{self, Classification};

pub const LAMBDA1_TOL: f64 = 1e-9;
pub const CLOSED_TOL: f64 = 1e-9;
pub const HEAT_VOL_TOL: f64 = 1e-6;
pub const HEAT_SCAL_TOL: f64 = 1e-5;

/// Volume and scalar curvature read off the small-time heat trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatFit {
    pub volume: f64,
    pub scal: f64,
}

/// Least-squares fit of (4πτ)^{d/2} Σ m e^{−τλ} = Vol·(1 + scal·τ/6 + O(τ²)) on
/// τ ∈ (0, window/λ₁], from the closed-form spectrum when there is one.
pub fn heat_fit(spec: &MetricSpec, window: f64) -> Result<HeatFit> {
    const NODES: usize = 20;
    const DEGREE: usize = 8;
    let tau_hi = window / spectrum::lambda1(spec)?.value;
    let tau_lo = tau_hi / NODES as f64;
    let cutoff = 60.0 / tau_lo;
    let slice = match spectrum::full_spectrum_closed(spec, cutoff) {
        Err(Error::WrongFamily(_)) => spectrum::truncated_spectrum(spec, cutoff)?,
        other => other?,
    };
    let half_d = spec.dimension() as f64 / 2.0;
    let taus: Vec<f64> = (1..=NODES).map(|i| tau_hi * i as f64 / NODES as f64).collect();
    let f = DVector::from_iterator(
        NODES,
        taus.iter().map(|&tau| {
            let z: f64 =
                slice.entries.iter().map(|l| l.multiplicity as f64 * (-tau * l.value).exp()).sum();
            (4.0 * PI * tau).powf(half_d) * z
        }),
    );
    let a = DMatrix::from_fn(NODES, DEGREE + 1, |i, j| (taus[i] / tau_hi).powi(j as i32));
    let c = a
        .svd(true, true)
        .solve(&f, 1e-14)
        .map_err(|e| Error::InvalidParameter(format!("heat-trace fit failed: {e}")))?;
    Ok(HeatFit { volume: c[0], scal: 6.0 * c[1] / (tau_hi * c[0]) })
}

/// One checked cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub table: u8,
    pub row: &'static str,
    pub metric: String,
    pub cell: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl CellResult {
    pub fn line(&self) -> String {
        format!(
            "{} table={} row=\"{}\" metric={} cell={} table_value={} independent={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.table,
            self.row,
            self.metric,
            self.cell,
            self.expected,
            self.observed
        )
    }
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

fn num(x: f64) -> String {
    crate::cli::fmt_num(x)
}

#[derive(Clone, Copy)]
enum Route {
    /// Curvature and volume through the (a, b, c, s) chart.
    Abcs,
    /// Heat-trace fit with the given window τ·λ₁.
    Heat(f64),
}

struct Row {
    table: u8,
    name: &'static str,
    samples: &'static [&'static str],
    lambda1: fn(Family) -> f64,
    scal: fn(Family) -> f64,
    vol: fn(Family) -> f64,
    route: Route,
}

fn fact(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

fn inv_sq(t: f64) -> f64 {
    1.0 / (t * t)
}

fn quat_scal(n: f64, t: [f64; 3]) -> f64 {
    let [t1, t2, t3] = t.map(|v| v * v);
    4.0 * (1.0 / t1 + 1.0 / t2 + 1.0 / t3) - 2.0 * (t1 / (t2 * t3) + t2 / (t1 * t3) + t3 / (t1 * t2))
        - 4.0 * n * (t1 + t2 + t3)
        + 16.0 * n * (n + 2.0)
}

fn unpack(f: Family) -> (f64, f64, [f64; 3]) {
    match f {
        Family::Round { d } => (d as f64, 0.0, [0.0; 3]),
        Family::BergerG { n, t } | Family::CPCheckH { n, t } => (n as f64, t, [t; 3]),
        Family::QuatH { n, t } => (n as f64, 0.0, t),
        Family::Spin9K { t } => (0.0, t, [t; 3]),
        Family::FubiniStudy(FsSpace::Complex(n)) | Family::FubiniStudy(FsSpace::Quaternionic(n)) => {
            (n as f64, 0.0, [0.0; 3])
        }
        Family::FubiniStudy(FsSpace::Cayley) => (2.0, 0.0, [0.0; 3]),
    }
}

fn rows() -> Vec<Row> {
    vec![
        Row {
            table: 1,
            name: "S^n round",
            samples: &["Sd(3):round", "Sd(6):round", "Sd(11):round"],
            lambda1: |f| unpack(f).0,
            scal: |f| {
                let n = unpack(f).0;
                n * (n - 1.0)
            },
            vol: |f| {
                let n = unpack(f).0;
                2.0 * PI.powf((n + 1.0) / 2.0) / gamma((n + 1.0) / 2.0)
            },
            route: Route::Heat(0.5),
        },
        Row {
            table: 1,
            name: "S^{2n+1} g(t)",
            samples: &["S3:g(0.4)", "S5:g(1.3)", "S7:g(0.8)"],
            lambda1: |f| {
                let (n, t, _) = unpack(f);
                (2.0 * n + inv_sq(t)).min(4.0 * (n + 1.0))
            },
            scal: |f| {
                let (n, t, _) = unpack(f);
                2.0 * n * (2.0 * n + 2.0 - t * t)
            },
            vol: |f| {
                let (n, t, _) = unpack(f);
                2.0 * PI.powf(n + 1.0) / fact(n as u32) * t
            },
            route: Route::Heat(0.5),
        },
        Row {
            table: 1,
            name: "S^{4n+3} h(t1,t2,t3)",
            samples: &["S7:h(0.5,0.8,1.2)", "S11:h(0.3,0.3,0.9)", "S15:h(0.7,1.1,1.6)"],
            lambda1: |f| {
                let (n, _, [t1, t2, t3]) = unpack(f);
                (4.0 * n + inv_sq(t1) + inv_sq(t2) + inv_sq(t3))
                    .min(8.0 * n + 4.0 * inv_sq(t2) + 4.0 * inv_sq(t3))
                    .min(8.0 * (n + 1.0))
            },
            scal: |f| {
                let (n, _, t) = unpack(f);
                quat_scal(n, t)
            },
            vol: |f| {
                let (n, _, [t1, t2, t3]) = unpack(f);
                2.0 * PI.powf(2.0 * n + 2.0) / fact(2 * n as u32 + 1) * t1 * t2 * t3
            },
            route: Route::Abcs,
        },
        Row {
            table: 1,
            name: "S^3 h(t1,t2,t3)",
            samples: &["S3:h(0.5,1,2)", "S3:h(0.8,0.8,1.3)", "S3:h(1.2,1.5,1.7)"],
            lambda1: |f| {
                let [t1, t2, t3] = unpack(f).2;
                (inv_sq(t1) + inv_sq(t2) + inv_sq(t3)).min(4.0 * inv_sq(t2) + 4.0 * inv_sq(t3))
            },
            scal: |f| quat_scal(0.0, unpack(f).2),
            vol: |f| {
                let [t1, t2, t3] = unpack(f).2;
                2.0 * PI * PI * t1 * t2 * t3
            },
            route: Route::Heat(0.1),
        },
        Row {
            table: 1,
            name: "S^15 k(t)",
            samples: &["S15:k(0.45)", "S15:k(0.7)", "S15:k(1.4)"],
            lambda1: |f| {
                let t = unpack(f).1;
                (8.0 + 7.0 * inv_sq(t)).min(32.0)
            },
            scal: |f| {
                let t = unpack(f).1;
                14.0 * (3.0 * inv_sq(t) + 16.0 - 4.0 * t * t)
            },
            vol: |f| {
                let t = unpack(f).1;
                2.0 * PI.powi(8) / fact(7) * t.powi(7)
            },
            route: Route::Heat(0.5),
        },
        Row {
            table: 1,
            name: "CP^n FS",
            samples: &["CP1:fs", "CP2:fs", "CP5:fs"],
            lambda1: |f| 4.0 * (unpack(f).0 + 1.0),
            scal: |f| {
                let n = unpack(f).0;
                4.0 * n * (n + 1.0)
            },
            vol: |f| {
                let n = unpack(f).0;
                PI.powf(n) / fact(n as u32)
            },
            route: Route::Heat(0.5),
        },
        Row {
            table: 1,
            name: "CP^{2n+1} hcheck(t)",
            samples: &["CP3:hcheck(0.7)", "CP5:hcheck(1.5)", "CP7:hcheck(0.4)"],
            lambda1: |f| {
                let (n, t, _) = unpack(f);
                (8.0 * n + 8.0 * inv_sq(t)).min(8.0 * (n + 1.0))
            },
            scal: |f| {
                let (n, t, _) = unpack(f);
                8.0 * inv_sq(t) + 16.0 * n * (n + 2.0) - 8.0 * n * t * t
            },
            vol: |f| {
                let (n, t, _) = unpack(f);
                PI.powf(2.0 * n + 1.0) / fact(2 * n as u32 + 1) * t * t
            },
            route: Route::Heat(0.5),
        },
        Row {
            table: 1,
            name: "HP^n FS",
            samples: &["HP1:fs", "HP2:fs", "HP3:fs"],
            lambda1: |f| 8.0 * (unpack(f).0 + 1.0),
            scal: |f| {
                let n = unpack(f).0;
                16.0 * n * (n + 2.0)
            },
            vol: |f| {
                let n = unpack(f).0;
                PI.powf(2.0 * n) / fact(2 * n as u32 + 1)
            },
            route: Route::Heat(0.5),
        },
        Row {
            table: 1,
            name: "CaP^2 FS",
            samples: &["CaP2:fs", "CaP2:fs*scale=0.5", "CaP2:fs*scale=2.0"],
            lambda1: |_| 48.0,
            scal: |_| 576.0,
            vol: |_| 6.0 * PI.powi(8) / fact(11),
            route: Route::Heat(0.5),
        },
        Row {
            table: 2,
            name: "RP^n round",
            samples: &["RPd(3):round", "RPd(6):round", "RPd(11):round"],
            lambda1: |f| 2.0 * (unpack(f).0 + 1.0),
            scal: |f| {
                let n = unpack(f).0;
                n * (n - 1.0)
            },
            vol: |f| {
                let n = unpack(f).0;
                PI.powf((n + 1.0) / 2.0) / gamma((n + 1.0) / 2.0)
            },
            route: Route::Heat(0.5),
        },
        Row {
            table: 2,
            name: "RP^{2n+1} g(t)",
            samples: &["RP3:g(0.4)", "RP5:g(1.3)", "RP7:g(0.8)"],
            lambda1: |f| {
                let (n, t, _) = unpack(f);
                (4.0 * n + 4.0 * inv_sq(t)).min(4.0 * (n + 1.0))
            },
            scal: |f| {
                let (n, t, _) = unpack(f);
                2.0 * n * (2.0 * n + 2.0 - t * t)
            },
            vol: |f| {
                let (n, t, _) = unpack(f);
                PI.powf(n + 1.0) / fact(n as u32) * t
            },
            route: Route::Heat(0.05),
        },
        Row {
            table: 2,
            name: "RP^{4n+3} h(t1,t2,t3)",
            samples: &["RP7:h(0.5,0.8,1.2)", "RP11:h(0.3,0.3,0.9)", "RP15:h(0.7,1.1,1.6)"],
            lambda1: |f| {
                let (n, _, [_, t2, t3]) = unpack(f);
                (8.0 * n + 4.0 * inv_sq(t2) + 4.0 * inv_sq(t3)).min(8.0 * (n + 1.0))
            },
            scal: |f| {
                let (n, _, t) = unpack(f);
                quat_scal(n, t)
            },
            vol: |f| {
                let (n, _, [t1, t2, t3]) = unpack(f);
                PI.powf(2.0 * n + 2.0) / fact(2 * n as u32 + 1) * t1 * t2 * t3
            },
            route: Route::Abcs,
        },
        Row {
            table: 2,
            name: "RP^3 h(t1,t2,t3)",
            samples: &["RP3:h(0.5,1,2)", "RP3:h(0.8,0.8,1.3)", "RP3:h(1.2,1.5,1.7)"],
            lambda1: |f| {
                let [_, t2, t3] = unpack(f).2;
                4.0 * inv_sq(t2) + 4.0 * inv_sq(t3)
            },
            scal: |f| quat_scal(0.0, unpack(f).2),
            vol: |f| {
                let [t1, t2, t3] = unpack(f).2;
                PI * PI * t1 * t2 * t3
            },
            route: Route::Heat(0.1),
        },
        Row {
            table: 2,
            name: "RP^15 k(t)",
            samples: &["RP15:k(0.45)", "RP15:k(0.7)", "RP15:k(1.4)"],
            lambda1: |f| {
                let t = unpack(f).1;
                (16.0 + 16.0 * inv_sq(t)).min(32.0)
            },
            scal: |f| {
                let t = unpack(f).1;
                14.0 * (3.0 * inv_sq(t) + 16.0 - 4.0 * t * t)
            },
            vol: |f| {
                let t = unpack(f).1;
                PI.powi(8) / fact(7) * t.powi(7)
            },
            route: Route::Heat(0.5),
        },
    ]
}

fn independent_geometry(spec: &MetricSpec, route: Route) -> Result<(f64, f64)> {
    match route {
        Route::Abcs => match metric::to_abcs(spec)? {
            AbcsForm::Quat(p) => {
                let n = match spec.family() {
                    Family::QuatH { n, .. } => n,
                    _ => unreachable!("Abcs route is only used for QuatH rows"),
                };
                let halved = if spec.quotient() == Quotient::Z2 { 0.5 } else { 1.0 };
                Ok((geometry::scal_abcs(n, p), halved * geometry::volume_abcs(n, p)))
            }
            AbcsForm::Cp { .. } => Err(Error::WrongFamily("CP chart in a QuatH row".into())),
        },
        Route::Heat(window) => {
            let fit = heat_fit(spec, window)?;
            Ok((fit.scal, fit.volume))
        }
    }
}

fn check_row(row: &Row) -> Result<Vec<CellResult>> {
    let mut out = Vec::new();
    for src in row.samples {
        let spec = parse_metric(src)?;
        let alpha = spec.scale();
        let f = spec.family();
        let text = format_metric(&spec);
        let cell = |cell, expected: f64, observed: f64, pass| CellResult {
            table: row.table,
            row: row.name,
            metric: text.clone(),
            cell,
            expected: num(expected),
            observed: num(observed),
            pass,
        };

        let l1 = (row.lambda1)(f) / alpha;
        let slice = spectrum::truncated_spectrum(&spec, l1 * (1.0 + 1e-6) + 1e-9)?;
        let first = slice.first_positive().map_or(f64::NAN, |l| l.value);
        out.push(cell("lambda1", l1, first, rel_close(l1, first, LAMBDA1_TOL)));

        let (scal_tol, vol_tol) = match row.route {
            Route::Abcs => (CLOSED_TOL, CLOSED_TOL),
            Route::Heat(_) => (HEAT_SCAL_TOL, HEAT_VOL_TOL),
        };
        let (scal_ind, vol_ind) = independent_geometry(&spec, row.route)?;
        let scal = (row.scal)(f) / alpha;
        out.push(cell("scal", scal, scal_ind, rel_close(scal, scal_ind, scal_tol)));
        let vol = (row.vol)(f) * alpha.powf(spec.dimension() as f64 / 2.0);
        let vol_pass = (vol - vol_ind).abs() <= vol_tol * vol.abs();
        out.push(cell("vol", vol, vol_ind, vol_pass));
    }
    Ok(out)
}

/// Table verdict for the Yamabe problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableVerdict {
    Stable,
    DegenerateStable,
    NotStable,
}

fn matches(verdict: TableVerdict, c: Classification) -> bool {
    matches!(
        (verdict, c),
        (TableVerdict::Stable, Classification::StableNondegenerate)
            | (TableVerdict::DegenerateStable, Classification::Degenerate)
            | (TableVerdict::NotStable, Classification::Unstable { .. })
    )
}

/// Sign of a strict inequality `lhs > rhs`, with equality read as degenerate stability.
fn strict(lhs: f64, rhs: f64) -> TableVerdict {
    if (lhs - rhs).abs() <= 1e-9 * lhs.abs().max(rhs.abs()).max(1.0) {
        TableVerdict::DegenerateStable
    } else if lhs > rhs {
        TableVerdict::Stable
    } else {
        TableVerdict::NotStable
    }
}

fn quat_region(n: f64, [t1, t2, t3]: [f64; 3]) -> TableVerdict {
    let (x, y, z) = (t1 * t1, t2 * t2, t3 * t3);
    let lhs = (2.0 * n * (x + y + z) + 8.0 * (n * n + n + 1.0)) * x * y * z + x * x + y * y + z * z;
    strict(lhs, 2.0 * (x * y + x * z + y * z))
}

fn spin9_threshold() -> f64 {
    ((19f64.sqrt() - 4.0) / 2.0).sqrt()
}

fn cp_threshold(n: f64) -> f64 {
    let m = 2.0 * n * n + n + 1.0;
    (((m * m + 4.0 * n).sqrt() - m) / (2.0 * n)).sqrt()
}

fn stability_verdict(spec: &MetricSpec) -> TableVerdict {
    let z2 = spec.quotient() == Quotient::Z2;
    match spec.family() {
        Family::Round { .. } if z2 => TableVerdict::Stable,
        Family::Round { .. } => TableVerdict::DegenerateStable,
        Family::BergerG { .. } if z2 => TableVerdict::Stable,
        Family::BergerG { t: 1.0, .. } => TableVerdict::DegenerateStable,
        Family::BergerG { .. } => TableVerdict::Stable,
        Family::QuatH { n: 0, .. } if z2 => TableVerdict::Stable,
        Family::QuatH { t, .. } if !z2 && t == [1.0; 3] => TableVerdict::DegenerateStable,
        Family::QuatH { n: 0, .. } => TableVerdict::Stable,
        Family::QuatH { n, t } => quat_region(n as f64, t),
        Family::Spin9K { t } if !z2 && t == 1.0 => TableVerdict::DegenerateStable,
        Family::Spin9K { t } => strict(t, spin9_threshold()),
        Family::FubiniStudy(FsSpace::Complex(1)) | Family::FubiniStudy(FsSpace::Quaternionic(1)) => {
            TableVerdict::DegenerateStable
        }
        Family::FubiniStudy(_) => TableVerdict::Stable,
        Family::CPCheckH { n, t } => strict(t, cp_threshold(n as f64)),
    }
}

fn stability_samples() -> Vec<(&'static str, Vec<String>)> {
    let s9 = spin9_threshold();
    let cp1 = cp_threshold(1.0);
    let diag = yamabe::diagonal_root(1).sqrt();
    let diag2 = yamabe::diagonal_root(2).sqrt();
    vec![
        ("S^n round", vec!["Sd(3):round".into(), "Sd(6):round".into(), "Sd(11):round".into()]),
        ("S^{2n+1} g(t)", vec!["S3:g(1)".into(), "S5:g(0.5)".into(), "S7:g(1.6)".into()]),
        (
            "S^{4n+3} h(t1,t2,t3)",
            vec![
                "S7:h(1,1,1)".into(),
                format!("S7:h({diag:?},{diag:?},{diag:?})"),
                "S7:h(0.2,0.2,0.2)".into(),
                "S11:h(0.5,0.8,1.2)".into(),
                "S15:h(0.05,0.1,3)".into(),
            ],
        ),
        ("S^3 h(t1,t2,t3)", vec!["S3:h(1,1,1)".into(), "S3:h(0.5,1,2)".into(), "S3:h(0.9,1,1)".into()]),
        (
            "S^15 k(t)",
            vec![
                format!("S15:k({s9:?})"),
                format!("S15:k({:?})", s9 * (1.0 - 1e-6)),
                format!("S15:k({:?})", s9 * (1.0 + 1e-6)),
                "S15:k(0.3)".into(),
                "S15:k(1)".into(),
                "S15:k(1.5)".into(),
            ],
        ),
        ("RP^n round", vec!["RPd(3):round".into(), "RPd(6):round".into(), "RPd(11):round".into()]),
        ("RP^{2n+1} g(t)", vec!["RP3:g(0.3)".into(), "RP5:g(1)".into(), "RP7:g(2)".into()]),
        (
            "RP^{4n+3} h(t1,t2,t3)",
            vec![
                "RP7:h(1,1,1)".into(),
                format!("RP11:h({diag2:?},{diag2:?},{diag2:?})"),
                "RP7:h(0.2,0.2,0.2)".into(),
                "RP15:h(0.05,0.1,3)".into(),
            ],
        ),
        ("RP^3 h(t1,t2,t3)", vec!["RP3:h(1,1,1)".into(), "RP3:h(0.5,1,2)".into(), "RP3:h(0.2,0.3,3)".into()]),
        (
            "RP^15 k(t)",
            vec![
                format!("RP15:k({s9:?})"),
                format!("RP15:k({:?})", s9 * (1.0 - 1e-6)),
                format!("RP15:k({:?})", s9 * (1.0 + 1e-6)),
                "RP15:k(0.3)".into(),
                "RP15:k(1)".into(),
            ],
        ),
        ("CP^n FS", vec!["CP1:fs".into(), "CP2:fs".into(), "CP4:fs".into()]),
        (
            "CP^{2n+1} hcheck(t)",
            vec![
                format!("CP3:hcheck({cp1:?})"),
                format!("CP3:hcheck({:?})", cp1 * (1.0 - 1e-6)),
                format!("CP3:hcheck({:?})", cp1 * (1.0 + 1e-6)),
                "CP5:hcheck(0.25)".into(),
                "CP7:hcheck(1.2)".into(),
            ],
        ),
        ("HP^n FS", vec!["HP1:fs".into(), "HP2:fs".into(), "HP3:fs".into()]),
        ("CaP^2 FS", vec!["CaP2:fs".into(), "CaP2:fs*scale=0.5".into(), "CaP2:fs*scale=2.0".into()]),
    ]
}

fn check_stability() -> Result<Vec<CellResult>> {
    let mut out = Vec::new();
    for (row, samples) in stability_samples() {
        for src in samples {
            let spec = parse_metric(&src)?;
            let verdict = stability_verdict(&spec);
            let report = yamabe::classify(&spec)?;
            out.push(CellResult {
                table: 3,
                row,
                metric: format_metric(&spec),
                cell: "stability",
                expected: format!("{verdict:?}"),
                observed: match report.classification {
                    Classification::Unstable { morse_index } => format!("Unstable(index={morse_index})"),
                    c => format!("{c:?}"),
                },
                pass: matches(verdict, report.classification),
            });
        }
    }
    Ok(out)
}

/// Re-derives every cell of table 1, 2 or 3 at its sample points.
pub fn check_table(which: u8) -> Result<Vec<CellResult>> {
    match which {
        1 | 2 => {
            let mut out = Vec::new();
            for row in rows().iter().filter(|r| r.table == which) {
                out.extend(check_row(row)?);
            }
            Ok(out)
        }
        3 => check_stability(),
        other => Err(Error::InvalidParameter(format!("no table {other}; expected 1, 2 or 3"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heat_fit_recovers_round_sphere() {
        let fit = heat_fit(&parse_metric("Sd(3):round").unwrap(), 0.5).unwrap();
        assert!((fit.volume / (2.0 * PI * PI) - 1.0).abs() < 1e-10);
        assert!((fit.scal - 6.0).abs() < 1e-8);
    }

    #[test]
    fn thresholds_agree_with_yamabe_module() {
        assert!((spin9_threshold() - yamabe::spin9_critical_t()).abs() < 1e-15);
        assert!((cp_threshold(1.0) - yamabe::cp_critical_t(1)).abs() < 1e-12);
    }

    #[test]
    fn unknown_table_is_rejected() {
        assert!(check_table(4).is_err());
    }
}
