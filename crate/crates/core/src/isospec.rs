//! Spectral comparison of two metrics and a randomized rigidity probe.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry;
use crate::metric::{Family, MetricSpec, Quotient};
use crate::spectrum;

/// First two heat invariants, up to universal constants, plus the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatInvariants {
    pub volume: f64,
    pub scal: f64,
    pub dimension: u32,
}

pub fn heat_invariants(spec: &MetricSpec) -> HeatInvariants {
    HeatInvariants {
        volume: geometry::volume(spec),
        scal: geometry::scal(spec),
        dimension: spec.dimension(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Dimension,
    Volume,
    Scal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ComparisonVerdict {
    MatchUpToCutoff,
    /// First discrepant level; a side is `None` when its spectrum has no level there.
    DifferAt {
        level: usize,
        values: (Option<f64>, Option<f64>),
        multiplicities: (Option<u128>, Option<u128>),
    },
    InvariantMismatch { which: Invariant },
}

/// Default relative tolerance for pairing eigenvalues.
pub const DEFAULT_MATCH_TOL: f64 = 1e-8;

fn differs(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() > tol * x.abs().max(y.abs()) + 1e-12
}

/// Invariant check followed by a level-by-level comparison below `cutoff`.
pub fn compare(a: &MetricSpec, b: &MetricSpec, cutoff: f64, tol: f64) -> Result<ComparisonVerdict> {
    let (ha, hb) = (heat_invariants(a), heat_invariants(b));
    if ha.dimension != hb.dimension {
        return Ok(ComparisonVerdict::InvariantMismatch { which: Invariant::Dimension });
    }
    if differs(ha.volume, hb.volume, tol) {
        return Ok(ComparisonVerdict::InvariantMismatch { which: Invariant::Volume });
    }
    if differs(ha.scal, hb.scal, tol) {
        return Ok(ComparisonVerdict::InvariantMismatch { which: Invariant::Scal });
    }
    compare_spectra(a, b, cutoff, tol)
}

/// Level-by-level comparison of truncated spectra, without the invariant pre-check.
pub fn compare_spectra(
    a: &MetricSpec,
    b: &MetricSpec,
    cutoff: f64,
    tol: f64,
) -> Result<ComparisonVerdict> {
    let reach = cutoff * (1.0 + 4.0 * tol);
    let sa = spectrum::truncated_spectrum(a, reach)?;
    let sb = spectrum::truncated_spectrum(b, reach)?;
    let (ea, eb) = (&sa.entries, &sb.entries);
    for level in 0..ea.len().max(eb.len()) {
        let (la, lb) = (ea.get(level), eb.get(level));
        let below = |l: Option<&spectrum::Level>| l.is_some_and(|l| l.value <= cutoff);
        if !below(la) && !below(lb) {
            break;
        }
        let same = match (la, lb) {
            (Some(x), Some(y)) => !differs(x.value, y.value, tol) && x.multiplicity == y.multiplicity,
            _ => false,
        };
        if !same {
            return Ok(ComparisonVerdict::DifferAt {
                level,
                values: (la.map(|l| l.value), lb.map(|l| l.value)),
                multiplicities: (la.map(|l| l.multiplicity), lb.map(|l| l.multiplicity)),
            });
        }
    }
    Ok(ComparisonVerdict::MatchUpToCutoff)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientPair {
    SphereSphere,
    SphereProjective,
    ProjectiveProjective,
}

impl QuotientPair {
    fn quotients(self) -> (Quotient, Quotient) {
        match self {
            QuotientPair::SphereSphere => (Quotient::Simple, Quotient::Simple),
            QuotientPair::SphereProjective => (Quotient::Simple, Quotient::Z2),
            QuotientPair::ProjectiveProjective => (Quotient::Z2, Quotient::Z2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub n: u32,
    pub pair: QuotientPair,
    pub samples: usize,
    /// Fixed cutoff; `None` uses 4 × the larger λ₁ of each pair.
    pub cutoff: Option<f64>,
    pub tol: f64,
    pub seed: u64,
    /// Rescale the second metric so both volumes agree, forcing the later checks to decide.
    pub match_volume: bool,
}

impl ProbeConfig {
    pub fn new(n: u32, pair: QuotientPair, samples: usize, seed: u64) -> Self {
        Self { n, pair, samples, cutoff: None, tol: DEFAULT_MATCH_TOL, seed, match_volume: false }
    }
}

/// How one sampled pair was resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOutcome {
    ParameterIdentical,
    Rejected(Invariant),
    SpectraDiffer,
    Candidate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeCandidate {
    pub sample: usize,
    pub a: MetricSpec,
    pub b: MetricSpec,
    pub cutoff: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub parameter_identical: usize,
    pub dimension: usize,
    pub volume: usize,
    pub scal: usize,
    pub spectrum: usize,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub seed: u64,
    pub samples: usize,
    pub n: u32,
    pub pair: QuotientPair,
    pub cutoff: Option<f64>,
    pub tol: f64,
    pub match_volume: bool,
    pub counts: OutcomeCounts,
    pub candidates: Vec<ProbeCandidate>,
}

/// Resolves one pair; returns the outcome and the cutoff that was used.
pub fn probe_pair(
    a: &MetricSpec,
    b: &MetricSpec,
    cutoff: Option<f64>,
    tol: f64,
) -> Result<(PairOutcome, f64)> {
    let cutoff = match cutoff {
        Some(c) => c,
        None => 4.0 * spectrum::lambda1(a)?.value.max(spectrum::lambda1(b)?.value),
    };
    if a == b {
        return Ok((PairOutcome::ParameterIdentical, cutoff));
    }
    let outcome = match compare(a, b, cutoff, tol)? {
        ComparisonVerdict::InvariantMismatch { which } => PairOutcome::Rejected(which),
        ComparisonVerdict::DifferAt { .. } => PairOutcome::SpectraDiffer,
        ComparisonVerdict::MatchUpToCutoff => PairOutcome::Candidate,
    };
    Ok((outcome, cutoff))
}

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    let (lo, hi) = (0.1f64.ln(), 10f64.ln());
    rng.gen_range(lo..hi).exp()
}

pub fn rigidity_probe(cfg: &ProbeConfig) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (qa, qb) = cfg.pair.quotients();
    let mut pairs = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let ta: [f64; 3] = std::array::from_fn(|_| log_uniform(&mut rng));
        let tb: [f64; 3] = std::array::from_fn(|_| log_uniform(&mut rng));
        let a = MetricSpec::new(Family::QuatH { n: cfg.n, t: ta }, qa, 1.0)?;
        let mut b = MetricSpec::new(Family::QuatH { n: cfg.n, t: tb }, qb, 1.0)?;
        if cfg.match_volume {
            let ratio = geometry::volume(&a) / geometry::volume(&b);
            b = b.with_scale(ratio.powf(2.0 / b.dimension() as f64))?;
        }
        pairs.push((a, b));
    }
    let outcomes: Vec<(PairOutcome, f64)> = pairs
        .par_iter()
        .map(|(a, b)| probe_pair(a, b, cfg.cutoff, cfg.tol))
        .collect::<Result<_>>()?;
    let mut counts = OutcomeCounts::default();
    let mut candidates = Vec::new();
    for (i, ((outcome, cutoff), (a, b))) in outcomes.into_iter().zip(pairs).enumerate() {
        match outcome {
            PairOutcome::ParameterIdentical => counts.parameter_identical += 1,
            PairOutcome::Rejected(Invariant::Dimension) => counts.dimension += 1,
            PairOutcome::Rejected(Invariant::Volume) => counts.volume += 1,
            PairOutcome::Rejected(Invariant::Scal) => counts.scal += 1,
            PairOutcome::SpectraDiffer => counts.spectrum += 1,
            PairOutcome::Candidate => {
                counts.candidates += 1;
                candidates.push(ProbeCandidate { sample: i, a, b, cutoff });
            }
        }
    }
    Ok(ProbeReport {
        seed: cfg.seed,
        samples: cfg.samples,
        n: cfg.n,
        pair: cfg.pair,
        cutoff: cfg.cutoff,
        tol: cfg.tol,
        match_volume: cfg.match_volume,
        counts,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn quat(t: [f64; 3], q: Quotient) -> MetricSpec {
        MetricSpec::new(Family::QuatH { n: 1, t }, q, 1.0).unwrap()
    }

    #[test]
    fn heat_invariant_examples() {
        let h = heat_invariants(&quat([1.0; 3], Quotient::Simple));
        assert!((h.volume - PI.powi(4) / 3.0).abs() < 1e-13);
        assert!((h.scal - 42.0).abs() < 1e-12);
        assert_eq!(h.dimension, 7);
        let h = heat_invariants(&quat([1.0; 3], Quotient::Z2));
        assert!((h.volume - PI.powi(4) / 6.0).abs() < 1e-13);
        let g = quat([0.5, 0.8, 1.9], Quotient::Simple);
        let (h1, h2) = (heat_invariants(&g), heat_invariants(&g.with_scale(2.0).unwrap()));
        assert!((h2.volume - h1.volume * 2f64.powf(3.5)).abs() < 1e-12 * h2.volume);
        assert!((h2.scal - h1.scal / 2.0).abs() < 1e-12);
    }

    #[test]
    fn compare_examples() {
        let round = quat([1.0; 3], Quotient::Simple);
        assert_eq!(compare(&round, &round, 40.0, 1e-8).unwrap(), ComparisonVerdict::MatchUpToCutoff);
        assert_eq!(
            compare(&round, &quat([1.0; 3], Quotient::Z2), 40.0, 1e-8).unwrap(),
            ComparisonVerdict::InvariantMismatch { which: Invariant::Volume }
        );
        let squashed = quat([1.0, 1.0, 0.9], Quotient::Simple);
        assert_eq!(
            compare(&squashed, &round, 40.0, 1e-8).unwrap(),
            ComparisonVerdict::InvariantMismatch { which: Invariant::Volume }
        );
        match compare_spectra(&squashed, &round, 40.0, 1e-8).unwrap() {
            ComparisonVerdict::DifferAt { level, values: (Some(x), Some(y)), .. } => {
                assert_eq!(level, 1);
                assert!((x - (6.0 + 1.0 / 0.81)).abs() < 1e-12);
                assert_eq!(y, 7.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn compare_is_symmetric() {
        let a = quat([0.5, 1.0, 1.0], Quotient::Simple);
        let b = quat([1.0, 0.5, 1.0], Quotient::Simple);
        assert_eq!(compare(&a, &b, 50.0, 1e-8).unwrap(), ComparisonVerdict::MatchUpToCutoff);
        let c = quat([0.6, 1.0, 1.2], Quotient::Simple);
        let ab = compare_spectra(&a, &c, 50.0, 1e-8).unwrap();
        let ba = compare_spectra(&c, &a, 50.0, 1e-8).unwrap();
        match (ab, ba) {
            (
                ComparisonVerdict::DifferAt { level: l1, values: (x1, y1), .. },
                ComparisonVerdict::DifferAt { level: l2, values: (x2, y2), .. },
            ) => assert_eq!((l1, x1, y1), (l2, y2, x2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn planted_identical_pair_is_excluded() {
        let a = quat([0.3, 0.7, 2.0], Quotient::Simple);
        let b = quat([2.0, 0.3, 0.7], Quotient::Simple);
        assert_eq!(probe_pair(&a, &b, None, 1e-8).unwrap().0, PairOutcome::ParameterIdentical);
    }

    #[test]
    fn probe_is_deterministic_and_empty() {
        let cfg = ProbeConfig::new(1, QuotientPair::SphereSphere, 40, 7);
        let r1 = rigidity_probe(&cfg).unwrap();
        let r2 = rigidity_probe(&cfg).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.candidates.is_empty());
        let cfg = ProbeConfig { match_volume: true, ..ProbeConfig::new(1, QuotientPair::SphereProjective, 40, 3) };
        let r = rigidity_probe(&cfg).unwrap();
        assert!(r.candidates.is_empty());
        assert_eq!(r.counts.volume, 0);
    }
}
