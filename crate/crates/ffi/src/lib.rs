//! C ABI for the resolution library.
//!
//! All functions are panic-safe: unwinding is caught and reported as
//! `ASRES_STATUS_PANIC`. Strings returned through out-parameters are
//! NUL-terminated, UTF-8, and owned by the caller; release them with
//! `asres_string_free`. Complex handles are opaque; release with
//! `asres_complex_free`.
//!
//! Every fallible call stores a human-readable message retrievable with
//! `asres_last_error_message`.

// raw-pointer deref inside extern "C" fns is the contract of a C ABI
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use asres::checker::{betti_formula, run_verification, VerifyOptions};
use asres::export::{cone_to_json, m2_script, minimal_to_json, to_json_string};
use asres::minimalizer::{minimalize, MinimalComplex};
use asres::polyring::is_prime;
use asres::rescomplex::{build_cone_complex, ChainView, Complex};
use asres::{ASParams, Error};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsresStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// The parameters violate the semigroup hypotheses (or a bad prime).
    InvalidParams = 2,
    /// Construction or verification failed.
    CheckFailed = 3,
    /// A panic was caught at the boundary.
    Panic = 4,
}

enum Inner {
    Cone(Complex),
    Minimal(MinimalComplex),
}

/// Opaque handle to a built complex (cone or minimal resolution).
pub struct AsresComplex {
    inner: Inner,
}

impl AsresComplex {
    fn view(&self) -> ChainView<'_> {
        match &self.inner {
            Inner::Cone(c) => c.view(),
            Inner::Minimal(m) => m.view(),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_for(e: &Error) -> AsresStatus {
    match e {
        Error::InvalidSemigroup { .. }
        | Error::OutOfHypothesis(_)
        | Error::Domain(_)
        | Error::InvalidPrime(_) => AsresStatus::InvalidParams,
        _ => AsresStatus::CheckFailed,
    }
}

fn guard<F: FnOnce() -> AsresStatus>(f: F) -> AsresStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            AsresStatus::Panic
        }
    }
}

fn params_from(m0: i64, d: i64, n: i64) -> Result<ASParams, Error> {
    if n < 0 {
        return Err(Error::Domain("n must be non-negative".into()));
    }
    ASParams::new(m0, d, n as usize)
}

fn give_string(out: *mut *mut c_char, text: String) -> AsresStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            AsresStatus::Ok
        }
        Err(_) => {
            set_error("interior NUL in output".into());
            AsresStatus::CheckFailed
        }
    }
}

/// The most recent error message on this thread, or NULL if none.
/// Caller owns the string; free with `asres_string_free`.
#[no_mangle]
pub extern "C" fn asres_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Builds the mapping-cone resolution for the semigroup generated by
/// m0, m0+d, ..., m0+n*d. On success stores a new handle in `out`.
#[no_mangle]
pub extern "C" fn asres_build_cone(
    m0: i64,
    d: i64,
    n: i64,
    out: *mut *mut AsresComplex,
) -> AsresStatus {
    if out.is_null() {
        return AsresStatus::NullArgument;
    }
    guard(|| {
        let built = params_from(m0, d, n).and_then(|p| build_cone_complex(&p));
        match built {
            Ok(c) => {
                let handle = Box::new(AsresComplex { inner: Inner::Cone(c) });
                unsafe { *out = Box::into_raw(handle) };
                AsresStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Prunes a cone handle to the minimal resolution; `complex` must be a
/// cone handle and stays valid.
#[no_mangle]
pub extern "C" fn asres_minimalize(
    complex: *const AsresComplex,
    out: *mut *mut AsresComplex,
) -> AsresStatus {
    if complex.is_null() || out.is_null() {
        return AsresStatus::NullArgument;
    }
    guard(|| {
        let handle = unsafe { &*complex };
        let Inner::Cone(cone) = &handle.inner else {
            set_error("handle is already a minimal complex".into());
            return AsresStatus::InvalidParams;
        };
        match minimalize(cone) {
            Ok(m) => {
                let boxed = Box::new(AsresComplex { inner: Inner::Minimal(m) });
                unsafe { *out = Box::into_raw(boxed) };
                AsresStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_for(&e)
            }
        }
    })
}

/// 0 for a cone handle, 1 for a minimal one, -1 on NULL.
#[no_mangle]
pub extern "C" fn asres_complex_kind(complex: *const AsresComplex) -> c_int {
    if complex.is_null() {
        return -1;
    }
    match unsafe { &*complex }.inner {
        Inner::Cone(_) => 0,
        Inner::Minimal(_) => 1,
    }
}

/// Number of homological positions (modules exist for 0..=length).
#[no_mangle]
pub extern "C" fn asres_complex_length(complex: *const AsresComplex) -> i64 {
    if complex.is_null() {
        return -1;
    }
    unsafe { &*complex }.view().len() as i64
}

/// Rank of the free module at position `s`, or -1 when out of range.
#[no_mangle]
pub extern "C" fn asres_complex_rank(complex: *const AsresComplex, s: i64) -> i64 {
    if complex.is_null() || s < 0 {
        return -1;
    }
    let view = unsafe { &*complex }.view();
    if s as usize > view.len() {
        return -1;
    }
    view.module(s as usize).rank() as i64
}

/// Canonical JSON export of the handle.
#[no_mangle]
pub extern "C" fn asres_complex_to_json(
    complex: *const AsresComplex,
    out: *mut *mut c_char,
) -> AsresStatus {
    if complex.is_null() || out.is_null() {
        return AsresStatus::NullArgument;
    }
    guard(|| {
        let handle = unsafe { &*complex };
        let json = match &handle.inner {
            Inner::Cone(c) => to_json_string(&cone_to_json(c)),
            Inner::Minimal(m) => to_json_string(&minimal_to_json(m)),
        };
        match json {
            Ok(text) => give_string(out, text),
            Err(e) => {
                set_error(e.to_string());
                AsresStatus::CheckFailed
            }
        }
    })
}

/// Macaulay2 script for the handle (ring, differentials, asserts).
#[no_mangle]
pub extern "C" fn asres_complex_to_cas(
    complex: *const AsresComplex,
    out: *mut *mut c_char,
) -> AsresStatus {
    if complex.is_null() || out.is_null() {
        return AsresStatus::NullArgument;
    }
    guard(|| {
        let handle = unsafe { &*complex };
        let kind = match &handle.inner {
            Inner::Cone(_) => "cone",
            Inner::Minimal(_) => "minimal",
        };
        give_string(out, m2_script(handle.view(), kind))
    })
}

/// beta_s from the closed form, or -1 on invalid input.
#[no_mangle]
pub extern "C" fn asres_betti(m0: i64, d: i64, n: i64, s: i64) -> i64 {
    let mut result = -1;
    let _ = guard(|| {
        match params_from(m0, d, n) {
            Ok(p) if s >= 1 && (s as usize) <= p.n => {
                result = betti_formula(&p, s as usize);
            }
            Ok(_) => set_error(format!("betti index {s} out of range")),
            Err(e) => set_error(e.to_string()),
        }
        AsresStatus::Ok
    });
    result
}

/// Runs the full verification suite. `wmax <= 0` means the default
/// window; `prime = 0` means the default prime. The JSON report is stored
/// in `out_report` even when verification fails; the status is Ok only if
/// every check passed.
#[no_mangle]
pub extern "C" fn asres_verify_json(
    m0: i64,
    d: i64,
    n: i64,
    wmax: i64,
    prime: u64,
    out_report: *mut *mut c_char,
) -> AsresStatus {
    if out_report.is_null() {
        return AsresStatus::NullArgument;
    }
    guard(|| {
        let params = match params_from(m0, d, n) {
            Ok(p) => p,
            Err(e) => {
                set_error(e.to_string());
                return status_for(&e);
            }
        };
        if prime != 0 && (prime <= 2 || !is_prime(prime)) {
            set_error(format!("invalid prime {prime}"));
            return AsresStatus::InvalidParams;
        }
        let mut opts = VerifyOptions::default();
        if wmax > 0 {
            opts.w_max = Some(wmax);
        }
        if prime != 0 {
            opts.rank_policy = asres::checker::RankPolicy::Hybrid { prime, threshold: 200 };
        }
        match run_verification(&params, opts) {
            Ok(report) => {
                let pass = report.pass;
                let text = match serde_json::to_string_pretty(&report) {
                    Ok(mut t) => {
                        t.push('\n');
                        t
                    }
                    Err(e) => {
                        set_error(e.to_string());
                        return AsresStatus::CheckFailed;
                    }
                };
                let st = give_string(out_report, text);
                if st != AsresStatus::Ok {
                    return st;
                }
                if pass {
                    AsresStatus::Ok
                } else {
                    set_error(
                        report
                            .first_failure()
                            .unwrap_or_else(|| "verification failed".into()),
                    );
                    AsresStatus::CheckFailed
                }
            }
            Err(e) => {
                set_error(e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Releases a complex handle. NULL is a no-op.
#[no_mangle]
pub extern "C" fn asres_complex_free(complex: *mut AsresComplex) {
    if !complex.is_null() {
        drop(unsafe { Box::from_raw(complex) });
    }
}

/// Releases a string returned by this library. NULL is a no-op.
#[no_mangle]
pub extern "C" fn asres_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
