//! C ABI over `hdepth-core`.
//!
//! Ideals and reports are opaque heap handles owned by the caller and freed
//! with the matching `*_free` function. Every fallible call returns an
//! [`HdStatus`]; the message of the most recent failure on the calling
//! thread is available through [`hd_last_error`].
//!
//! Buffer-filling functions follow one convention: they write at most `cap`
//! elements (bytes for strings, including the trailing NUL), always store
//! the required length in `*len_out`, and return
//! `HD_STATUS_BUFFER_TOO_SMALL` when `cap` is insufficient.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hdepth_core::{
    binom, cli::report_json, hdepth, hdepth_report, parse_ideal, verify_corpus, AlphaVector, EnumerationPlan,
    Error, HdepthReport, Ideal, Predicate,
};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Containment = 5,
    Capacity = 6,
    Range = 7,
    UnknownPredicate = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Opaque squarefree monomial ideal.
pub struct HdIdeal(Ideal);

/// Opaque Hilbert depth report.
pub struct HdReport(HdepthReport);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> HdStatus {
    match e {
        Error::Parse { .. } => HdStatus::Parse,
        Error::Domain(_) => HdStatus::Domain,
        Error::Containment(_) => HdStatus::Containment,
        Error::Capacity(_) => HdStatus::Capacity,
        Error::Range { .. } => HdStatus::Range,
        Error::UnknownPredicate(_) => HdStatus::UnknownPredicate,
    }
}

fn fail(e: Error) -> HdStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> HdStatus {
    set_error(format!("null pointer: {what}"));
    HdStatus::NullPointer
}

/// Runs `f`, turning a panic into `HD_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> HdStatus) -> HdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            HdStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HdStatus> {
    if p.is_null() {
        return Err(null("string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        HdStatus::InvalidUtf8
    })
}

unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize, len_out: *mut usize) -> HdStatus {
    if len_out.is_null() {
        return null("len_out");
    }
    let need = s.len() + 1;
    *len_out = need;
    if buf.is_null() || cap < need {
        set_error(format!("buffer holds {cap} bytes, {need} needed"));
        return HdStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    HdStatus::Ok
}

unsafe fn write_slice<T: Copy>(xs: &[T], buf: *mut T, cap: usize, len_out: *mut usize) -> HdStatus {
    if len_out.is_null() {
        return null("len_out");
    }
    *len_out = xs.len();
    if cap < xs.len() || (buf.is_null() && !xs.is_empty()) {
        set_error(format!("buffer holds {cap} entries, {} needed", xs.len()));
        return HdStatus::BufferTooSmall;
    }
    if !xs.is_empty() {
        ptr::copy_nonoverlapping(xs.as_ptr(), buf, xs.len());
    }
    HdStatus::Ok
}

/// Copies the last error message of this thread into `buf`.
#[no_mangle]
pub unsafe extern "C" fn hd_last_error(buf: *mut c_char, cap: usize, len_out: *mut usize) -> HdStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    let status = write_str(&msg, buf, cap, len_out);
    // probing for the size must not replace the message being read
    set_error(msg);
    status
}

/// `C(n, k)` for `n <= 40`; zero when `k` is out of range.
#[no_mangle]
pub unsafe extern "C" fn hd_binom(n: u32, k: i64, out: *mut i64) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match binom(n, k) {
            Ok(v) => {
                *out = v as i64;
                HdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses a generator list (`x1*x2, x2*x3`, `0`, `1`) over `n` variables.
#[no_mangle]
pub unsafe extern "C" fn hd_ideal_parse(text: *const c_char, n: u32, out: *mut *mut HdIdeal) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_ideal(text, n) {
            Ok(i) => {
                *out = Box::into_raw(Box::new(HdIdeal(i)));
                HdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn hd_ideal_free(ideal: *mut HdIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hd_ideal_n(ideal: *const HdIdeal) -> u32 {
    ideal.as_ref().map_or(0, |i| i.0.n())
}

/// Minimal generators as bitmasks (bit `i - 1` is variable `x_i`).
#[no_mangle]
pub unsafe extern "C" fn hd_ideal_generators(
    ideal: *const HdIdeal,
    buf: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> HdStatus {
    guard(|| {
        let Some(i) = ideal.as_ref() else { return null("ideal") };
        let bits: Vec<u64> = i.0.gens().iter().map(|g| g.bits()).collect();
        write_slice(&bits, buf, cap, len_out)
    })
}

/// Canonical text form of the ideal, NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hd_ideal_to_string(
    ideal: *const HdIdeal,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> HdStatus {
    guard(|| {
        let Some(i) = ideal.as_ref() else { return null("ideal") };
        write_str(&i.0.to_string(), buf, cap, len_out)
    })
}

/// Hilbert depth of a module from its α-vector (`len = n + 1` counts).
#[no_mangle]
pub unsafe extern "C" fn hd_hdepth_from_alpha(counts: *const u64, len: usize, out: *mut u32) -> HdStatus {
    guard(|| {
        if counts.is_null() || out.is_null() || len == 0 {
            return null("counts/out");
        }
        let v = std::slice::from_raw_parts(counts, len).to_vec();
        let a = match AlphaVector::new(len as u32 - 1, v) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        match hdepth(&a) {
            Ok(d) => {
                *out = d;
                HdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Full report for `0 ⊊ I ⊊ S`.
#[no_mangle]
pub unsafe extern "C" fn hd_report_new(ideal: *const HdIdeal, out: *mut *mut HdReport) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        *out = ptr::null_mut();
        let Some(i) = ideal.as_ref() else { return null("ideal") };
        match hdepth_report(&i.0) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(HdReport(r)));
                HdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn hd_report_free(report: *mut HdReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Writes `hdepth(S/I)` and `hdepth(I)`.
#[no_mangle]
pub unsafe extern "C" fn hd_report_hdepths(
    report: *const HdReport,
    quotient_out: *mut u32,
    ideal_out: *mut u32,
) -> HdStatus {
    guard(|| {
        let Some(r) = report.as_ref() else { return null("report") };
        if quotient_out.is_null() || ideal_out.is_null() {
            return null("out");
        }
        *quotient_out = r.0.hdepth_quotient;
        *ideal_out = r.0.hdepth_ideal;
        HdStatus::Ok
    })
}

/// Principal and `I ⊆ m²` flags.
#[no_mangle]
pub unsafe extern "C" fn hd_report_flags(
    report: *const HdReport,
    principal_out: *mut bool,
    in_m2_out: *mut bool,
) -> HdStatus {
    guard(|| {
        let Some(r) = report.as_ref() else { return null("report") };
        if principal_out.is_null() || in_m2_out.is_null() {
            return null("out");
        }
        *principal_out = r.0.principal;
        *in_m2_out = r.0.contained_in_m2;
        HdStatus::Ok
    })
}

/// α-vector of `S/I` (`quotient = true`) or of `I`.
#[no_mangle]
pub unsafe extern "C" fn hd_report_alpha(
    report: *const HdReport,
    quotient: bool,
    buf: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> HdStatus {
    guard(|| {
        let Some(r) = report.as_ref() else { return null("report") };
        let a = if quotient { &r.0.alpha_quotient } else { &r.0.alpha_ideal };
        write_slice(a.counts(), buf, cap, len_out)
    })
}

/// β-row at level `q` of `S/I` (`quotient = true`) or of `I`. Fails with
/// `HD_STATUS_RANGE` if an entry does not fit in 64 bits.
#[no_mangle]
pub unsafe extern "C" fn hd_report_beta(
    report: *const HdReport,
    quotient: bool,
    q: u32,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> HdStatus {
    guard(|| {
        let Some(r) = report.as_ref() else { return null("report") };
        if q > r.0.n() {
            return fail(Error::Domain(format!("level q = {q} exceeds n = {}", r.0.n())));
        }
        let t = if quotient { r.0.beta_quotient(q) } else { r.0.beta_ideal(q) };
        let mut row = Vec::with_capacity(t.values().len());
        for &b in t.values() {
            match i64::try_from(b) {
                Ok(v) => row.push(v),
                Err(_) => return fail(Error::Range { value: u64::MAX, max: i64::MAX as u64 }),
            }
        }
        write_slice(&row, buf, cap, len_out)
    })
}

/// The report as JSON (α and β entries as decimal strings).
#[no_mangle]
pub unsafe extern "C" fn hd_report_to_json(
    report: *const HdReport,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> HdStatus {
    guard(|| {
        let Some(r) = report.as_ref() else { return null("report") };
        write_str(&report_json(&r.0).to_string(), buf, cap, len_out)
    })
}

/// Runs one named check (`teo1`, `lem`, `beta-q6`, `lemma79`, `main`,
/// `kruskal-katona`, `beta47-bound`) on a report.
#[no_mangle]
pub unsafe extern "C" fn hd_report_check(
    report: *const HdReport,
    predicate: *const c_char,
    applicable_out: *mut bool,
    passed_out: *mut bool,
) -> HdStatus {
    guard(|| {
        let Some(r) = report.as_ref() else { return null("report") };
        if applicable_out.is_null() || passed_out.is_null() {
            return null("out");
        }
        let name = match read_str(predicate) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let p: Predicate = match name.parse() {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let o = p.check(&r.0);
        *applicable_out = o.applicable;
        *passed_out = o.passed;
        HdStatus::Ok
    })
}

/// Runs the check suite over every proper nonzero ideal with `1 <= n <= n_max`
/// (`n_max <= 6`), reporting instance and failure counts.
#[no_mangle]
pub unsafe extern "C" fn hd_verify_exhaustive(
    n_max: u32,
    workers: u32,
    instances_out: *mut u64,
    failures_out: *mut u64,
) -> HdStatus {
    guard(|| {
        if instances_out.is_null() || failures_out.is_null() {
            return null("out");
        }
        let plan = EnumerationPlan::exhaustive(1, n_max).with_workers(workers as usize);
        match verify_corpus(&plan, None) {
            Ok(s) => {
                *instances_out = s.instances;
                *failures_out = s.failures;
                HdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
