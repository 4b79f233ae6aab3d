//! Command-line surface. Every command returns its stdout text and exit code so it can be
//! driven from tests as well as from the binary.
//!
//! Exit codes: 0 success, 1 a `tables` cell failed, 2 input error (parse, usage, invalid
//! argument, unreadable file), 3 resource cap, 4 numerical failure or output I/O error.

pub mod text;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::isospec::{self, ProbeConfig, QuotientPair, DEFAULT_MATCH_TOL};
use crate::metric::MetricSpec;
use crate::spectrum;
use crate::su2_rep::{self, TriAxis};
use crate::tables;
use crate::yamabe;
use crate::Result;

pub use text::{format_metric, parse_metric};

pub const THREADS_ENV: &str = "CROSS_SPEC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cross-spec", version, about = "Spectra and Yamabe stability of homogeneous metrics on CROSSes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairArg {
    SphereSphere,
    SphereProjective,
    ProjectiveProjective,
}

impl From<PairArg> for QuotientPair {
    fn from(p: PairArg) -> Self {
        match p {
            PairArg::SphereSphere => QuotientPair::SphereSphere,
            PairArg::SphereProjective => QuotientPair::SphereProjective,
            PairArg::ProjectiveProjective => QuotientPair::ProjectiveProjective,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First positive eigenvalue, multiplicity and the attaining branch.
    Lambda1 { metric: String },
    /// Eigenvalues up to a cutoff with multiplicities.
    Spectrum {
        metric: String,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Yamabe stability classification.
    Stability { metric: String },
    /// Morse index and nullity of the Yamabe functional.
    Morse { metric: String },
    /// Volume, scalar curvature and dimension.
    Geometry { metric: String },
    /// Sample the stability boundary surface; CSV on stdout, or a .csv/.obj file.
    Boundary {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary crossings along a curve given as CSV with header t1,t2,t3.
    Bifurcate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        curve_file: PathBuf,
    },
    /// Compare two metrics by heat invariants and spectrum.
    Isospec {
        a: String,
        b: String,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, default_value_t = DEFAULT_MATCH_TOL)]
        tol: f64,
        /// Skip the volume and scalar curvature pre-check.
        #[arg(long)]
        spectra_only: bool,
    },
    /// Randomized search for isospectral non-isometric pairs of h(t1,t2,t3) metrics.
    Probe {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "sphere-sphere")]
        pair: PairArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cutoff: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_MATCH_TOL)]
        tol: f64,
        #[arg(long)]
        match_volume: bool,
    },
    /// Eigenvalues of the SU(2) operator on the k-th irreducible representation.
    Nu {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Axes a,b,c.
        #[arg(long, value_delimiter = ',', required = true)]
        axes: Vec<f64>,
    },
    /// Re-derive every cell of table 1, 2 or 3 and print PASS/FAIL lines.
    Tables {
        #[arg(long)]
        which: u8,
    },
}

/// Text and exit code produced by one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: 0 }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Self { stdout: String::new(), stderr: msg.into(), code }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidParameter(_)
        | Error::WrongFamily(_)
        | Error::NegativeK(_)
        | Error::Parity(_) => 2,
        Error::ResourceCap(_) | Error::KTooLarge { .. } | Error::Overflow(_) => 3,
        Error::NoConvergence { .. } | Error::CubicInversion(_) => 4,
    }
}

/// `%.12g`-style rendering.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x.abs());
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let sign = if x < 0.0 { "-" } else { "" };
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        let body = if exp >= 0 {
            let (int, frac) = digits.split_at(exp as usize + 1);
            format!("{int}.{frac}")
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        format!("{sign}{}", trim(body))
    } else {
        format!("{sign}{}e{exp}", trim(format!("{}.{}", &digits[..1], &digits[1..])))
    }
}

/// Rounds every float in a JSON tree to 12 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => n
            .as_f64()
            .and_then(|x| fmt_num(x).parse::<f64>().ok())
            .and_then(serde_json::Number::from_f64)
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("output types serialize");
    let mut s = serde_json::to_string_pretty(&round_json(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Sizes the rayon global pool from `CROSS_SPEC_THREADS`; returns a warning on bad input.
pub fn init_threads() -> Option<String> {
    let raw = std::env::var(THREADS_ENV).ok()?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .err()
            .map(|e| format!("{THREADS_ENV}: {e}")),
        _ => Some(format!("{THREADS_ENV}={raw:?} is not a positive integer; using the default pool")),
    }
}

/// Parses a curve file: header `t1,t2,t3`, then one sample per line.
pub fn parse_curve(src: &str) -> Result<Vec<[f64; 3]>> {
    let mut lines = src.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let header_ok = lines
        .next()
        .map(|(_, l)| l.split(',').map(str::trim).eq(["t1", "t2", "t3"]))
        .unwrap_or(false);
    if !header_ok {
        return Err(Error::Parse { pos: 0, reason: "curve file must start with header t1,t2,t3".into() });
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let bad = |reason: &str| Error::Parse { pos: i + 1, reason: format!("line {}: {reason}", i + 1) };
        let vals: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>().map_err(|_| bad("malformed number")))
            .collect::<Result<_>>()?;
        match vals[..] {
            [a, b, c] if [a, b, c].iter().all(|v| v.is_finite() && *v > 0.0) => out.push([a, b, c]),
            [_, _, _] => return Err(bad("parameters must be finite and positive")),
            _ => return Err(bad("expected three columns")),
        }
    }
    Ok(out)
}

fn spectrum_csv(slice: &spectrum::SpectrumSlice) -> String {
    let mut s = String::from("value,multiplicity\n");
    for l in &slice.entries {
        s.push_str(&format!("{},{}\n", fmt_num(l.value), l.multiplicity));
    }
    s
}

fn metric(src: &str) -> Result<MetricSpec> {
    parse_metric(src)
}

fn execute(cmd: Command) -> Result<Outcome> {
    let out = match cmd {
        Command::Lambda1 { metric: m } => {
            let spec = metric(&m)?;
            let l1 = spectrum::lambda1(&spec)?;
            Outcome::ok(to_json(&l1))
        }
        Command::Spectrum { metric: m, cutoff, format } => {
            let spec = metric(&m)?;
            let slice = spectrum::truncated_spectrum(&spec, cutoff)?;
            match format {
                Format::Json => Outcome::ok(to_json(&json!({
                    "metric": format_metric(&spec),
                    "cutoff": slice.cutoff,
                    "levels": slice.entries,
                }))),
                Format::Csv => Outcome::ok(spectrum_csv(&slice)),
            }
        }
        Command::Stability { metric: m } => {
            let spec = metric(&m)?;
            let report = yamabe::classify(&spec)?;
            Outcome::ok(to_json(&json!({ "metric": format_metric(&spec), "report": report })))
        }
        Command::Morse { metric: m } => {
            let spec = metric(&m)?;
            Outcome::ok(to_json(&yamabe::morse_index(&spec)?))
        }
        Command::Geometry { metric: m } => {
            let spec = metric(&m)?;
            Outcome::ok(to_json(&isospec::heat_invariants(&spec)))
        }
        Command::Boundary { n, resolution, out } => {
            let mesh = yamabe::boundary_mesh(n, resolution);
            match out {
                None => Outcome::ok(mesh.to_csv()),
                Some(path) => {
                    let obj = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("obj"));
                    let body = if obj { mesh.to_obj() } else { mesh.to_csv() };
                    if let Err(e) = std::fs::write(&path, body) {
                        return Ok(Outcome::fail(4, format!("cannot write {}: {e}", path.display())));
                    }
                    Outcome::ok(to_json(&json!({
                        "n": n,
                        "points": mesh.points.len(),
                        "warning": mesh.warning,
                        "out": path.display().to_string(),
                    })))
                }
            }
        }
        Command::Bifurcate { n, curve_file } => {
            let src = match std::fs::read_to_string(&curve_file) {
                Ok(s) => s,
                Err(e) => {
                    return Ok(Outcome::fail(2, format!("cannot read {}: {e}", curve_file.display())))
                }
            };
            let curve = parse_curve(&src)?;
            Outcome::ok(to_json(&yamabe::bifurcation_scan(n, &curve)))
        }
        Command::Isospec { a, b, cutoff, tol, spectra_only } => {
            let (a, b) = (metric(&a)?, metric(&b)?);
            let verdict = if spectra_only {
                isospec::compare_spectra(&a, &b, cutoff, tol)?
            } else {
                isospec::compare(&a, &b, cutoff, tol)?
            };
            Outcome::ok(to_json(&verdict))
        }
        Command::Probe { n, pair, samples, seed, cutoff, tol, match_volume } => {
            let mut cfg = ProbeConfig::new(n, pair.into(), samples, seed);
            cfg.cutoff = cutoff;
            cfg.tol = tol;
            cfg.match_volume = match_volume;
            Outcome::ok(to_json(&isospec::rigidity_probe(&cfg)?))
        }
        Command::Nu { k, axes } => {
            let k = su2_rep::checked_k(k)?;
            if axes.len() != 3 {
                return Ok(Outcome::fail(2, format!("--axes takes three values, got {}", axes.len())));
            }
            let axes = TriAxis::new(axes[0], axes[1], axes[2])?;
            Outcome::ok(to_json(&su2_rep::nu_spectrum(k, axes)?))
        }
        Command::Tables { which } => {
            let cells = tables::check_table(which)?;
            let mut s = String::new();
            for c in &cells {
                s.push_str(&c.line());
                s.push('\n');
            }
            let failed = cells.iter().filter(|c| !c.pass).count();
            s.push_str(&format!("table {which}: {} cells, {failed} failed\n", cells.len()));
            Outcome { stdout: s, stderr: String::new(), code: i32::from(failed > 0) }
        }
    };
    Ok(out)
}

/// Runs a parsed command, mapping library errors to exit codes.
pub fn run(cli: Cli) -> Outcome {
    match execute(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::fail(exit_code(&e), format!("error: {e}")),
    }
}

/// Parses `args` (without the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("cross-spec")).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                Outcome::ok(rendered)
            } else {
                Outcome::fail(code, rendered)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(10.0), "10");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(-2.0 / 3.0 * 1e-7), "-6.66666666667e-8");
        assert_eq!(fmt_num(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_num(7.234567890123456), "7.23456789012");
        assert_eq!(fmt_num(0.000123), "0.000123");
        assert_eq!(fmt_num(9.9999999999999), "10");
    }

    #[test]
    fn curve_parsing() {
        let c = parse_curve("t1,t2,t3\n1,1,1\n0.5, 0.5 ,0.5\n").unwrap();
        assert_eq!(c, vec![[1.0; 3], [0.5; 3]]);
        assert!(matches!(parse_curve("a,b,c\n1,1,1"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_curve("t1,t2,t3\n1,1\n"), Err(Error::Parse { pos: 2, .. })));
    }
}
