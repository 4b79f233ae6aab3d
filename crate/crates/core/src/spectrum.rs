//! Laplace spectra of homogeneous CROSS metrics: truncated enumeration, closed-form series
//! and the first eigenvalue with its multiplicity.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{self, ABCSParams, AbcsForm, Family, FsSpace, MetricSpec, Quotient};
use crate::rep_enum::{self, QuotientKind, RepLabel};
use crate::su2_rep::{self, NuOptions, TriAxis};

/// Provenance of one summand of a spectral level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigLabel {
    /// λ_j^{(p,q)}; `j = 1` for the CP^{2n+1} series.
    Rep { p: u32, q: u32, j: u32 },
    /// Closed-form series term (k, l); `l = 0` for one-index series.
    Closed { k: u32, l: u32 },
    /// ν_j^{(k)} on S³ or RP³.
    Su2 { k: u32, j: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub value: f64,
    pub multiplicity: u128,
    pub labels: Vec<EigLabel>,
}

/// Eigenvalues up to `cutoff`, coalesced, strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSlice {
    pub cutoff: f64,
    pub entries: Vec<Level>,
}

impl SpectrumSlice {
    /// First nonzero level, if any lies below the cutoff.
    pub fn first_positive(&self) -> Option<&Level> {
        self.entries.iter().find(|l| l.value > 0.0)
    }

    pub fn total_multiplicity(&self) -> u128 {
        self.entries.iter().map(|l| l.multiplicity).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeTol {
    pub rel: f64,
    pub abs: f64,
}

impl Default for MergeTol {
    fn default() -> Self {
        Self { rel: 1e-9, abs: 1e-12 }
    }
}

impl MergeTol {
    pub fn same(&self, x: f64, y: f64) -> bool {
        let d = (x - y).abs();
        d <= self.abs || d <= self.rel * x.abs().max(y.abs())
    }

    fn admits(&self, v: f64, cutoff: f64) -> bool {
        v <= cutoff + self.rel * cutoff.abs() + self.abs
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub merge: MergeTol,
    /// Ceiling on enumerated (p, q) cells or series terms.
    pub max_cells: usize,
    pub nu: NuOptions,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self { merge: MergeTol::default(), max_cells: 20_000_000, nu: NuOptions::default() }
    }
}

type Raw = (f64, u128, EigLabel);

/// Sorts, filters by the cutoff and coalesces nearby values.
pub fn coalesce(mut raw: Vec<Raw>, cutoff: f64, tol: MergeTol) -> SpectrumSlice {
    raw.retain(|r| tol.admits(r.0, cutoff));
    raw.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.2.cmp(&y.2)));
    let mut entries: Vec<Level> = Vec::new();
    for (value, mult, label) in raw {
        match entries.last_mut() {
            Some(last) if tol.same(last.value, value) => {
                last.multiplicity += mult;
                last.labels.push(label);
            }
            _ => entries.push(Level { value, multiplicity: mult, labels: vec![label] }),
        }
    }
    SpectrumSlice { cutoff, entries }
}

fn checked_cutoff(cutoff: f64) -> Result<()> {
    if cutoff.is_finite() && cutoff > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("cutoff {cutoff} must be finite and positive")))
    }
}

fn u32_of(v: usize) -> u32 {
    u32::try_from(v).expect("index fits in u32")
}

/// λ_j^{(p,q)}(a,b,c,s) = (4pn + 4q(p+n+1))s² + 2ν_j^{(p−q)}(a,b,c), with `j` 1-based.
pub fn eigenvalue_pqj(n: u32, label: RepLabel, j: usize, params: ABCSParams) -> Result<f64> {
    let k = label.k() as usize;
    if j == 0 || j > k + 1 {
        return Err(Error::InvalidParameter(format!("j = {j} outside 1..={}", k + 1)));
    }
    let nu = su2_rep::nu_spectrum(k, params.axes())?;
    Ok(rep_base(n, label) * params.s * params.s + 2.0 * nu.values[j - 1])
}

fn rep_base(n: u32, label: RepLabel) -> f64 {
    let (p, q, n) = (label.p as f64, label.q as f64, n as f64);
    4.0 * p * n + 4.0 * q * (p + n + 1.0)
}

/// λ̌^{(p,q)}(b,s) = (4pn + 4q(p+n+1))s² + 2(p−q)(p−q+2)b² on CP^{2n+1}.
pub fn eigenvalue_cp(n: u32, label: RepLabel, b: f64, s: f64) -> Result<f64> {
    let k = label.k();
    if !k.is_multiple_of(2) {
        return Err(Error::Parity(k as i64));
    }
    let kf = k as f64;
    Ok(rep_base(n, label) * s * s + 2.0 * kf * (kf + 2.0) * b * b)
}

pub fn truncated_spectrum(spec: &MetricSpec, cutoff: f64) -> Result<SpectrumSlice> {
    truncated_spectrum_with(spec, cutoff, &SpectrumOptions::default())
}

pub fn truncated_spectrum_with(
    spec: &MetricSpec,
    cutoff: f64,
    opts: &SpectrumOptions,
) -> Result<SpectrumSlice> {
    checked_cutoff(cutoff)?;
    match spec.family() {
        Family::QuatH { n: 0, .. } => {
            s3_spectrum_with(metric::s3_axes(spec)?, spec.quotient(), cutoff, opts)
        }
        Family::QuatH { n, .. } | Family::CPCheckH { n, .. } => {
            let kind = match (spec.family(), spec.quotient()) {
                (Family::CPCheckH { .. }, _) => QuotientKind::ComplexProjective,
                (_, Quotient::Simple) => QuotientKind::Sphere,
                (_, Quotient::Z2) => QuotientKind::RealProjective,
            };
            let raw = match metric::to_abcs(spec)? {
                AbcsForm::Quat(p) => quat_raw(n, kind, p, cutoff, opts, true)?,
                AbcsForm::Cp { b, s } => cp_raw(n, b, s, cutoff, opts)?,
            };
            Ok(coalesce(raw, cutoff, opts.merge))
        }
        _ => full_spectrum_closed_with(spec, cutoff, opts),
    }
}

/// Enumeration without lower-bound pruning, for checking the pruning rule.
pub fn truncated_spectrum_unpruned(spec: &MetricSpec, cutoff: f64) -> Result<SpectrumSlice> {
    checked_cutoff(cutoff)?;
    let opts = SpectrumOptions::default();
    match (spec.family(), metric::to_abcs(spec)?) {
        (Family::QuatH { n, .. }, AbcsForm::Quat(p)) => {
            let kind = match spec.quotient() {
                Quotient::Simple => QuotientKind::Sphere,
                Quotient::Z2 => QuotientKind::RealProjective,
            };
            Ok(coalesce(quat_raw(n, kind, p, cutoff, &opts, false)?, cutoff, opts.merge))
        }
        (other, _) => Err(Error::WrongFamily(format!("{other:?}"))),
    }
}

fn p_max_for(n: u32, s: f64, bound: f64, opts: &SpectrumOptions) -> Result<u32> {
    let p_max = (bound / (4.0 * n as f64 * s * s)).ceil();
    let cells = 0.5 * (p_max + 1.0) * (p_max + 2.0);
    if !(cells <= opts.max_cells as f64) {
        return Err(Error::ResourceCap(format!(
            "cutoff needs about {cells:.3e} representation cells (cap {})",
            opts.max_cells
        )));
    }
    Ok(p_max as u32)
}

fn quat_raw(
    n: u32,
    kind: QuotientKind,
    params: ABCSParams,
    cutoff: f64,
    opts: &SpectrumOptions,
    prune: bool,
) -> Result<Vec<Raw>> {
    let bound = cutoff + opts.merge.rel * cutoff + opts.merge.abs;
    let s2 = params.s * params.s;
    let axes = params.axes();
    let p_max = p_max_for(n, params.s, bound, opts)?;
    let cells: Vec<RepLabel> = rep_enum::spherical_reps(n, kind, p_max)
        .into_iter()
        .filter(|r| {
            let base = rep_base(n, *r) * s2;
            let nu_floor = if prune { su2_rep::nu_lower_bound(r.k() as usize, axes) } else { 0.0 };
            base + 2.0 * nu_floor <= bound
        })
        .collect();
    let mut ks: Vec<usize> = cells.iter().map(|r| r.k() as usize).collect();
    ks.sort_unstable();
    ks.dedup();
    if let Some(&k) = ks.last() {
        if k > opts.nu.k_cap {
            return Err(Error::ResourceCap(format!("needs k = {k} above cap {}", opts.nu.k_cap)));
        }
    }
    let nus: BTreeMap<usize, Vec<f64>> = ks
        .par_iter()
        .map(|&k| su2_rep::nu_spectrum_with(k, axes, opts.nu).map(|v| (k, v.values)))
        .collect::<Result<_>>()?;
    let mut raw = Vec::new();
    for r in cells {
        let base = rep_base(n, r) * s2;
        let nu = &nus[&(r.k() as usize)];
        let mut dim = None;
        for (j, v) in nu.iter().enumerate() {
            let value = base + 2.0 * v;
            if value > bound {
                break;
            }
            let d = match dim {
                Some(d) => d,
                None => *dim.insert(rep_enum::dim_pq(n, r)?),
            };
            raw.push((value, d, EigLabel::Rep { p: r.p, q: r.q, j: u32_of(j + 1) }));
        }
    }
    Ok(raw)
}

fn cp_raw(n: u32, b: f64, s: f64, cutoff: f64, opts: &SpectrumOptions) -> Result<Vec<Raw>> {
    let bound = cutoff + opts.merge.rel * cutoff + opts.merge.abs;
    let p_max = p_max_for(n, s, bound, opts)?;
    let mut raw = Vec::new();
    for r in rep_enum::spherical_reps(n, QuotientKind::ComplexProjective, p_max) {
        let value = eigenvalue_cp(n, r, b, s)?;
        if value <= bound {
            raw.push((value, rep_enum::dim_pq(n, r)?, EigLabel::Rep { p: r.p, q: r.q, j: 1 }));
        }
    }
    Ok(raw)
}

/// Spectrum of g_{(a,b,c)} on S³ (all k) or RP³ (even k): ν_j^{(k)} with multiplicity k+1.
pub fn s3_spectrum(axes: TriAxis, quotient: Quotient, cutoff: f64) -> Result<SpectrumSlice> {
    s3_spectrum_with(axes, quotient, cutoff, &SpectrumOptions::default())
}

fn s3_spectrum_with(
    axes: TriAxis,
    quotient: Quotient,
    cutoff: f64,
    opts: &SpectrumOptions,
) -> Result<SpectrumSlice> {
    checked_cutoff(cutoff)?;
    let bound = cutoff + opts.merge.rel * cutoff + opts.merge.abs;
    let step = if quotient == Quotient::Z2 { 2 } else { 1 };
    let [_, b2, c2] = axes.squares();
    let mut ks = Vec::new();
    let mut k = 0usize;
    // 2kb² + k²c² is increasing in k, so the first k beyond the bound ends the search
    while 2.0 * k as f64 * b2 + (k * k) as f64 * c2 <= bound {
        if su2_rep::nu_lower_bound(k, axes) <= bound {
            ks.push(k);
        }
        k += step;
        if k > opts.nu.k_cap {
            return Err(Error::ResourceCap(format!(
                "S^3 spectrum needs k beyond cap {}",
                opts.nu.k_cap
            )));
        }
    }
    let blocks: Vec<(usize, Vec<f64>)> = ks
        .par_iter()
        .map(|&k| su2_rep::nu_spectrum_with(k, axes, opts.nu).map(|v| (k, v.values)))
        .collect::<Result<_>>()?;
    let mut raw = Vec::new();
    for (k, values) in blocks {
        for (j, v) in values.into_iter().enumerate() {
            raw.push((v, (k + 1) as u128, EigLabel::Su2 { k: u32_of(k), j: u32_of(j + 1) }));
        }
    }
    Ok(coalesce(raw, cutoff, opts.merge))
}

pub fn full_spectrum_closed(spec: &MetricSpec, cutoff: f64) -> Result<SpectrumSlice> {
    full_spectrum_closed_with(spec, cutoff, &SpectrumOptions::default())
}

/// m_{k,l} = d_{(k+l)/2, (k−l)/2}.
fn m_kl(n: u32, k: u32, l: u32) -> Result<u128> {
    rep_enum::dim_pq(n, RepLabel { p: (k + l) / 2, q: (k - l) / 2 })
}

/// m̃_{k,l}: total dimension of the λ_j^{(p,q)} with p+q = k and |p−q−2(j−1)| = l.
pub fn m_tilde(n: u32, k: u32, l: u32) -> Result<u128> {
    let mut total = 0u128;
    for q in 0..=k / 2 {
        let p = k - q;
        let diff = (p - q) as i64;
        let hits = (0..=diff).filter(|i| (diff - 2 * i).unsigned_abs() == l as u64).count();
        if hits > 0 {
            total += hits as u128 * rep_enum::dim_pq(n, RepLabel { p, q })?;
        }
    }
    Ok(total)
}

/// Multiplicity of μ_{k,l} for the U(n+1)-invariant Berger sphere S^{2n+1}.
pub fn berger_multiplicity(n: u32, k: u32, l: u32) -> Result<u128> {
    if n >= 3 && n % 2 == 1 {
        return m_tilde((n - 1) / 2, k, l);
    }
    unitary_berger_multiplicity(n, k, l)
}

/// Σ dim H_{p,q}(C^{n+1}) over p + q = k, |p − q| = l.
pub fn unitary_berger_multiplicity(n: u32, k: u32, l: u32) -> Result<u128> {
    let p = (k + l) / 2;
    let q = (k - l) / 2;
    let mut total = rep_enum::unitary_bidegree_dim(n + 1, p, q)?;
    if l > 0 {
        total += rep_enum::unitary_bidegree_dim(n + 1, q, p)?;
    }
    Ok(total)
}

fn full_spectrum_closed_with(
    spec: &MetricSpec,
    cutoff: f64,
    opts: &SpectrumOptions,
) -> Result<SpectrumSlice> {
    checked_cutoff(cutoff)?;
    let alpha = spec.scale();
    let unscaled = cutoff * alpha;
    let bound = unscaled + opts.merge.rel * unscaled + opts.merge.abs;
    let z2 = spec.quotient() == Quotient::Z2;
    let mut raw: Vec<Raw> = Vec::new();
    let mut budget = opts.max_cells;
    let mut spend = |k: u32| -> Result<()> {
        budget = budget.checked_sub(k as usize + 1).ok_or_else(|| {
            Error::ResourceCap(format!("closed-form series exceeds {} terms", opts.max_cells))
        })?;
        Ok(())
    };
    // two-index series; value is monotone in l, so min(value(k,0), value(k,k)) bounds row k
    // from below and grows with k
    let mut two_index = |even_k: bool,
                         even_l: bool,
                         value: &dyn Fn(f64, f64) -> f64,
                         mult: &dyn Fn(u32, u32) -> Result<u128>|
     -> Result<()> {
        let mut k = 0u32;
        while value(k as f64, 0.0).min(value(k as f64, k as f64)) <= bound {
            if !even_k || k.is_multiple_of(2) {
                spend(k)?;
                for l in (k % 2..=k).step_by(2) {
                    if even_l && l % 2 != 0 {
                        continue;
                    }
                    let v = value(k as f64, l as f64);
                    if v <= bound {
                        raw.push((v, mult(k, l)?, EigLabel::Closed { k, l }));
                    }
                }
            }
            k += 1;
        }
        Ok(())
    };
    match spec.family() {
        Family::Round { d } => {
            let df = d as f64;
            let mut k = 0u32;
            while (k as f64) * (k as f64 + df - 1.0) <= bound {
                if !z2 || k.is_multiple_of(2) {
                    let v = k as f64 * (k as f64 + df - 1.0);
                    raw.push((v, rep_enum::round_multiplicity(d, k)?, EigLabel::Closed { k, l: 0 }));
                }
                k += 1;
            }
        }
        Family::QuatH { n, t } if n >= 1 && t[0] == t[2] => {
            let w = 1.0 / (t[0] * t[0]) - 1.0;
            let nf = n as f64;
            two_index(
                z2,
                z2,
                &|k, l| k * (k + 4.0 * nf + 2.0) + l * (l + 2.0) * w,
                &|k, l| Ok((l as u128 + 1) * m_kl(n, k, l)?),
            )?;
        }
        Family::CPCheckH { n, t } => {
            let w = 1.0 / (t * t) - 1.0;
            let nf = n as f64;
            two_index(
                true,
                true,
                &|k, l| k * (k + 4.0 * nf + 2.0) + l * (l + 2.0) * w,
                &|k, l| m_kl(n, k, l),
            )?;
        }
        Family::BergerG { n, t } => {
            let w = 1.0 / (t * t) - 1.0;
            let nf = n as f64;
            two_index(
                z2,
                false,
                &|k, l| k * (k + 2.0 * nf) + l * l * w,
                &|k, l| berger_multiplicity(n, k, l),
            )?;
        }
        Family::Spin9K { t } => {
            let w = 1.0 / (t * t) - 1.0;
            two_index(
                z2,
                false,
                &|k, l| k * (k + 14.0) + l * (l + 6.0) * w,
                &|k, l| rep_enum::spin9_dim((k - l) / 2, l),
            )?;
        }
        Family::FubiniStudy(fs) => {
            let (value, mult): (Box<dyn Fn(f64) -> f64>, Box<dyn Fn(u32) -> Result<u128>>) =
                match fs {
                    FsSpace::Complex(n) => (
                        Box::new(move |k| 4.0 * k * (k + n as f64)),
                        Box::new(move |k| rep_enum::unitary_bidegree_dim(n + 1, k, k)),
                    ),
                    FsSpace::Quaternionic(n) => (
                        Box::new(move |k| 4.0 * k * (k + 2.0 * n as f64 + 1.0)),
                        Box::new(move |k| rep_enum::dim_pq(n, RepLabel { p: k, q: k })),
                    ),
                    FsSpace::Cayley => {
                        (Box::new(|k| 4.0 * k * (k + 11.0)), Box::new(rep_enum::f4_dim))
                    }
                };
            let mut k = 0u32;
            while value(k as f64) <= bound {
                raw.push((value(k as f64), mult(k)?, EigLabel::Closed { k, l: 0 }));
                k += 1;
            }
        }
        other => {
            return Err(Error::WrongFamily(format!("no closed-form spectrum for {other:?}")));
        }
    }
    for r in raw.iter_mut() {
        r.0 /= alpha;
    }
    Ok(coalesce(raw, cutoff, opts.merge))
}

/// First positive eigenvalue with multiplicity and the argmin branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lambda1 {
    pub value: f64,
    pub multiplicity: u128,
    pub branch: String,
}

struct Candidate {
    value: f64,
    mult: u128,
    branch: &'static str,
}

fn cand(value: f64, mult: u128, branch: &'static str) -> Candidate {
    Candidate { value, mult, branch }
}

/// Closed-form candidates whose minimum is λ₁, before scaling.
fn lambda1_candidates(spec: &MetricSpec) -> Result<Vec<Candidate>> {
    let sphere = spec.quotient() == Quotient::Simple;
    let dp = |n: u32, p: u32, q: u32| rep_enum::dim_pq(n, RepLabel { p, q });
    let mut out = Vec::new();
    match spec.family() {
        Family::Round { d } => {
            if sphere {
                out.push(cand(d as f64, d as u128 + 1, "k=1"));
            } else {
                out.push(cand(2.0 * (d as f64 + 1.0), rep_enum::round_multiplicity(d, 2)?, "k=2"));
            }
        }
        Family::QuatH { n: 0, .. } => {
            let [a2, b2, c2] = metric::s3_axes(spec)?.squares();
            // undo the folded homothety; it is reapplied by the caller
            let alpha = spec.scale();
            let (a2, b2, c2) = (a2 * alpha, b2 * alpha, c2 * alpha);
            if sphere {
                out.push(cand(a2 + b2 + c2, 4, "k=1"));
            }
            for v in [b2 + c2, a2 + c2, a2 + b2] {
                out.push(cand(4.0 * v, 3, "k=2"));
            }
        }
        Family::QuatH { n, .. } => {
            let AbcsForm::Quat(p) = metric::to_abcs(&spec.with_scale(1.0)?)? else {
                unreachable!()
            };
            let (a2, b2, c2, s2) = (p.a * p.a, p.b * p.b, p.c * p.c, p.s * p.s);
            let nf = n as f64;
            if sphere {
                out.push(cand(4.0 * nf * s2 + 2.0 * (a2 + b2 + c2), 2 * dp(n, 1, 0)?, "(1,0)"));
            }
            let d20 = dp(n, 2, 0)?;
            for v in [b2 + c2, a2 + c2, a2 + b2] {
                out.push(cand(8.0 * (nf * s2 + v), d20, "(2,0)"));
            }
            out.push(cand(8.0 * (nf + 1.0) * s2, dp(n, 1, 1)?, "(1,1)"));
        }
        Family::CPCheckH { n, .. } => {
            let AbcsForm::Cp { b, s } = metric::to_abcs(&spec.with_scale(1.0)?)? else {
                unreachable!()
            };
            let nf = n as f64;
            out.push(cand(8.0 * nf * s * s + 16.0 * b * b, dp(n, 2, 0)?, "(2,0)"));
            out.push(cand(8.0 * (nf + 1.0) * s * s, dp(n, 1, 1)?, "(1,1)"));
        }
        Family::BergerG { n, t } => {
            let (nf, nu) = (n as f64, n as u128);
            if sphere {
                out.push(cand(2.0 * nf + 1.0 / (t * t), 2 * (nu + 1), "mu(1,1)"));
            } else {
                out.push(cand(4.0 * nf + 4.0 / (t * t), (nu + 1) * (nu + 2), "mu(2,2)"));
            }
            out.push(cand(4.0 * (nf + 1.0), nu * (nu + 2), "mu(2,0)"));
        }
        Family::Spin9K { t } => {
            if sphere {
                out.push(cand(8.0 + 7.0 / (t * t), 16, "mu(1,1)"));
            } else {
                out.push(cand(16.0 + 16.0 / (t * t), 126, "mu(2,2)"));
            }
            out.push(cand(32.0, 9, "mu(2,0)"));
        }
        Family::FubiniStudy(FsSpace::Complex(n)) => {
            out.push(cand(4.0 * (n as f64 + 1.0), n as u128 * (n as u128 + 2), "k=1"));
        }
        Family::FubiniStudy(FsSpace::Quaternionic(n)) => {
            out.push(cand(8.0 * (n as f64 + 1.0), dp(n, 1, 1)?, "k=1"));
        }
        Family::FubiniStudy(FsSpace::Cayley) => out.push(cand(48.0, 26, "k=1")),
    }
    Ok(out)
}

pub fn lambda1(spec: &MetricSpec) -> Result<Lambda1> {
    let tol = MergeTol::default();
    let cands = lambda1_candidates(spec)?;
    let min = cands.iter().map(|c| c.value).fold(f64::INFINITY, f64::min);
    let mut multiplicity = 0;
    let mut names: Vec<&str> = Vec::new();
    for c in cands.iter().filter(|c| tol.same(c.value, min)) {
        multiplicity += c.mult;
        if !names.contains(&c.branch) {
            names.push(c.branch);
        }
    }
    Ok(Lambda1 { value: min / spec.scale(), multiplicity, branch: names.join("=") })
}
