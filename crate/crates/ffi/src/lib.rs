//! C ABI over `cross_spec`.
//!
//! Every fallible function returns a [`CrossSpecStatus`] code and writes results through
//! out-pointers. On failure, [`cross_spec_last_error`] describes the most recent error on
//! the calling thread. Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cross_spec::cli::{format_metric, parse_metric};
use cross_spec::yamabe::{self, Classification};
use cross_spec::{geometry, spectrum, su2_rep, Error, MetricSpec, SpectrumSlice, TriAxis};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSpecStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    ResourceCap = 3,
    Numerical = 4,
    InvalidArgument = 5,
    InvalidUtf8 = 6,
    /// A value does not fit the output type, e.g. a multiplicity above 2^64 − 1.
    OutOfRange = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Yamabe stability class.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSpecClass {
    StableNondegenerate = 0,
    Degenerate = 1,
    Unstable = 2,
}

/// Result of [`cross_spec_stability`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSpecStability {
    pub lambda1: f64,
    pub scal: f64,
    /// λ₁ − scal/(dim − 1).
    pub jacobi_gap: f64,
    pub classification: CrossSpecClass,
    /// Zero unless `classification` is `Unstable`.
    pub morse_index: u64,
}

/// Opaque parsed metric.
pub struct CrossSpecMetric(MetricSpec);

/// Opaque truncated spectrum.
pub struct CrossSpecSpectrum(SpectrumSlice);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CrossSpecStatus {
    match e {
        Error::Parse { .. } => CrossSpecStatus::Parse,
        Error::ResourceCap(_) | Error::KTooLarge { .. } | Error::Overflow(_) => {
            CrossSpecStatus::ResourceCap
        }
        Error::NoConvergence { .. } | Error::CubicInversion(_) => CrossSpecStatus::Numerical,
        Error::InvalidParameter(_) | Error::WrongFamily(_) | Error::NegativeK(_) | Error::Parity(_) => {
            CrossSpecStatus::InvalidArgument
        }
    }
}

struct Fail(CrossSpecStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(CrossSpecStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CrossSpecStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CrossSpecStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CrossSpecStatus::Panic
        }
    }
}

unsafe fn metric_ref<'a>(m: *const CrossSpecMetric) -> Result<&'a MetricSpec, Fail> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("metric"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

fn to_u64(x: u128) -> Result<u64, Fail> {
    u64::try_from(x).map_err(|_| Fail(CrossSpecStatus::OutOfRange, format!("{x} exceeds 2^64 - 1")))
}

/// Message for the last failed call on this thread; empty if none. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cross_spec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a metric such as `S7:h(0.5,1,1)` or `CP3:hcheck(0.7)*scale=2`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer. On success
/// `*out` owns a handle to be released with [`cross_spec_metric_free`].
#[no_mangle]
pub unsafe extern "C" fn cross_spec_metric_parse(
    text: *const c_char,
    out: *mut *mut CrossSpecMetric,
) -> CrossSpecStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Fail(CrossSpecStatus::InvalidUtf8, e.to_string()))?;
        let spec = parse_metric(s)?;
        *out = Box::into_raw(Box::new(CrossSpecMetric(spec)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from [`cross_spec_metric_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_metric_free(m: *mut CrossSpecMetric) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Canonical text of a metric; release with [`cross_spec_string_free`].
///
/// # Safety
/// `m` must be a live metric handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_metric_to_string(
    m: *const CrossSpecMetric,
    out: *mut *mut c_char,
) -> CrossSpecStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let text = format_metric(metric_ref(m)?);
        *out = CString::new(text).expect("metric text has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `m` must be a live metric handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_metric_dimension(
    m: *const CrossSpecMetric,
    out: *mut u32,
) -> CrossSpecStatus {
    guard(|| {
        *out_ref(out, "out")? = metric_ref(m)?.dimension();
        Ok(())
    })
}

/// Volume and scalar curvature.
///
/// # Safety
/// `m` must be a live metric handle; `volume` and `scal` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_geometry(
    m: *const CrossSpecMetric,
    volume: *mut f64,
    scal: *mut f64,
) -> CrossSpecStatus {
    guard(|| {
        let spec = metric_ref(m)?;
        *out_ref(volume, "volume")? = geometry::volume(spec);
        *out_ref(scal, "scal")? = geometry::scal(spec);
        Ok(())
    })
}

/// First positive eigenvalue and its multiplicity.
///
/// # Safety
/// `m` must be a live metric handle; `value` and `multiplicity` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_lambda1(
    m: *const CrossSpecMetric,
    value: *mut f64,
    multiplicity: *mut u64,
) -> CrossSpecStatus {
    guard(|| {
        let l1 = spectrum::lambda1(metric_ref(m)?)?;
        let mult = to_u64(l1.multiplicity)?;
        *out_ref(value, "value")? = l1.value;
        *out_ref(multiplicity, "multiplicity")? = mult;
        Ok(())
    })
}

/// Yamabe stability classification.
///
/// # Safety
/// `m` must be a live metric handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_stability(
    m: *const CrossSpecMetric,
    out: *mut CrossSpecStability,
) -> CrossSpecStatus {
    guard(|| {
        let r = yamabe::classify(metric_ref(m)?)?;
        let (classification, morse_index) = match r.classification {
            Classification::StableNondegenerate => (CrossSpecClass::StableNondegenerate, 0),
            Classification::Degenerate => (CrossSpecClass::Degenerate, 0),
            Classification::Unstable { morse_index } => (CrossSpecClass::Unstable, to_u64(morse_index)?),
        };
        *out_ref(out, "out")? = CrossSpecStability {
            lambda1: r.lambda1,
            scal: r.scal,
            jacobi_gap: r.jacobi_gap,
            classification,
            morse_index,
        };
        Ok(())
    })
}

/// Coalesced eigenvalues up to `cutoff`; release with [`cross_spec_spectrum_free`].
///
/// # Safety
/// `m` must be a live metric handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_spectrum(
    m: *const CrossSpecMetric,
    cutoff: f64,
    out: *mut *mut CrossSpecSpectrum,
) -> CrossSpecStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let slice = spectrum::truncated_spectrum(metric_ref(m)?, cutoff)?;
        *out = Box::into_raw(Box::new(CrossSpecSpectrum(slice)));
        Ok(())
    })
}

/// Number of levels; zero for a null handle.
///
/// # Safety
/// `s` must be null or a live spectrum handle.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_spectrum_len(s: *const CrossSpecSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.entries.len())
}

/// Level `index` (0-based) in increasing order.
///
/// # Safety
/// `s` must be a live spectrum handle; `value` and `multiplicity` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_spectrum_level(
    s: *const CrossSpecSpectrum,
    index: usize,
    value: *mut f64,
    multiplicity: *mut u64,
) -> CrossSpecStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spectrum"))?;
        let level = s.0.entries.get(index).ok_or_else(|| {
            Fail(CrossSpecStatus::OutOfRange, format!("level {index} of {}", s.0.entries.len()))
        })?;
        let mult = to_u64(level.multiplicity)?;
        *out_ref(value, "value")? = level.value;
        *out_ref(multiplicity, "multiplicity")? = mult;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from [`cross_spec_spectrum`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_spectrum_free(s: *mut CrossSpecSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The k+1 eigenvalues of the SU(2) operator on the k-th irreducible representation for
/// axes (a, b, c), ascending. `*len` receives k+1 even when `cap` is too small.
///
/// # Safety
/// `out` must point to at least `cap` writable doubles (or be null with `cap == 0`);
/// `len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cross_spec_nu_spectrum(
    k: i64,
    a: f64,
    b: f64,
    c: f64,
    out: *mut f64,
    cap: usize,
    len: *mut usize,
) -> CrossSpecStatus {
    guard(|| {
        let len = out_ref(len, "len")?;
        let k = su2_rep::checked_k(k)?;
        let nu = su2_rep::nu_spectrum(k, TriAxis::new(a, b, c)?)?;
        *len = nu.values.len();
        if cap < nu.values.len() {
            return Err(Fail(
                CrossSpecStatus::BufferTooSmall,
                format!("need {} doubles, got {cap}", nu.values.len()),
            ));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, cap)[..nu.values.len()].copy_from_slice(&nu.values);
        Ok(())
    })
}
