//! C ABI for the certifier.
//!
//! Reports are opaque handles; callers read them through accessor functions
//! and release them with [`det3cert_report_free`]. Strings crossing the
//! boundary are NUL-terminated UTF-8; forms travel in the line-based text
//! format of the core crate. Every entry point returns a
//! [`Det3CertStatus`] and never unwinds across the boundary.
//!
//! The matching header is generated into `include/det3cert.h` at build
//! time.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use det3cert::certify::{run_all, run_selected, CheckContext, Report};
use det3cert::forms::Form;
use det3cert::invariants;
use det3cert::Error;

/// Status code for every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Det3CertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownCheck = 3,
    ParseError = 4,
    ZeroForm = 5,
    InternalError = 6,
}

/// Opaque certification report. Create with [`det3cert_run_all`] or
/// [`det3cert_run_check`]; free with [`det3cert_report_free`].
pub struct Det3CertReport {
    report: Report,
    json: CString,
}

impl Det3CertReport {
    fn boxed(report: Report) -> *mut Det3CertReport {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        let json = CString::new(json).expect("JSON has no interior NUL");
        Box::into_raw(Box::new(Det3CertReport { report, json }))
    }
}

fn status_of(err: &Error) -> Det3CertStatus {
    match err {
        Error::UnknownCheck(_) => Det3CertStatus::UnknownCheck,
        Error::Parse(_) => Det3CertStatus::ParseError,
        Error::ZeroForm => Det3CertStatus::ZeroForm,
        _ => Det3CertStatus::InternalError,
    }
}

fn guard(body: impl FnOnce() -> Det3CertStatus) -> Det3CertStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(Det3CertStatus::InternalError)
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, Det3CertStatus> {
    if ptr.is_null() {
        return Err(Det3CertStatus::NullPointer);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Det3CertStatus::InvalidUtf8)
}

/// Run the full check battery. On success writes a new report handle to
/// `out`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn det3cert_run_all(
    seed: u64,
    trials: u32,
    out: *mut *mut Det3CertReport,
) -> Det3CertStatus {
    guard(|| {
        if out.is_null() {
            return Det3CertStatus::NullPointer;
        }
        let ctx = CheckContext::new(seed).with_trials(trials);
        let report = run_all(&ctx);
        unsafe { *out = Det3CertReport::boxed(report) };
        Det3CertStatus::Ok
    })
}

/// Run a single registered check by id.
///
/// # Safety
/// `check_id` must be a NUL-terminated string and `out` a valid pointer to
/// writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn det3cert_run_check(
    check_id: *const c_char,
    seed: u64,
    trials: u32,
    out: *mut *mut Det3CertReport,
) -> Det3CertStatus {
    guard(|| {
        if out.is_null() {
            return Det3CertStatus::NullPointer;
        }
        let id = match unsafe { read_utf8(check_id) } {
            Ok(s) => s.to_string(),
            Err(status) => return status,
        };
        let ctx = CheckContext::new(seed).with_trials(trials);
        match run_selected(&ctx, &[id]) {
            Ok(report) => {
                unsafe { *out = Det3CertReport::boxed(report) };
                Det3CertStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Borrow the JSON rendering of a report. The pointer stays valid until the
/// report is freed.
///
/// # Safety
/// `report` must be a live handle from this library (or null, which yields
/// null).
#[no_mangle]
pub unsafe extern "C" fn det3cert_report_json(report: *const Det3CertReport) -> *const c_char {
    if report.is_null() {
        return std::ptr::null();
    }
    unsafe { (*report).json.as_ptr() }
}

/// Number of checks recorded in the report; 0 for null.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn det3cert_report_total(report: *const Det3CertReport) -> u32 {
    if report.is_null() {
        return 0;
    }
    unsafe { (*report).report.summary.total as u32 }
}

/// Number of failing checks; 0 for null.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn det3cert_report_failures(report: *const Det3CertReport) -> u32 {
    if report.is_null() {
        return 0;
    }
    unsafe { (*report).report.summary.fail as u32 }
}

/// Number of inconclusive checks; 0 for null.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn det3cert_report_inconclusive(report: *const Det3CertReport) -> u32 {
    if report.is_null() {
        return 0;
    }
    unsafe { (*report).report.summary.inconclusive as u32 }
}

/// Release a report handle. Null is a no-op.
///
/// # Safety
/// `report` must be a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn det3cert_report_free(report: *mut Det3CertReport) {
    if report.is_null() {
        return;
    }
    drop(unsafe { Box::from_raw(report) });
}

/// Newline-separated list of the registered check ids. Free with
/// [`det3cert_string_free`].
#[no_mangle]
pub extern "C" fn det3cert_list_checks() -> *mut c_char {
    let joined = det3cert::certify::check_ids().join("\n");
    CString::new(joined).expect("ids have no NUL").into_raw()
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn det3cert_string_free(s: *mut c_char) {
    if s.is_null() {
        return;
    }
    drop(unsafe { CString::from_raw(s) });
}

unsafe fn parse_form(text: *const c_char) -> Result<Form, Det3CertStatus> {
    let text = unsafe { read_utf8(text)? };
    Form::from_text(text).map_err(|e| status_of(&e))
}

/// Derivative-span dimension of the form given in text format.
///
/// # Safety
/// `form_text` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn det3cert_nu(form_text: *const c_char, out: *mut u32) -> Det3CertStatus {
    guard(|| {
        if out.is_null() {
            return Det3CertStatus::NullPointer;
        }
        match unsafe { parse_form(form_text) } {
            Ok(form) => {
                unsafe { *out = invariants::nu(&form) as u32 };
                Det3CertStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Stabilizer Lie-algebra dimension of the form given in text format.
///
/// # Safety
/// `form_text` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn det3cert_stab_lie_dim(
    form_text: *const c_char,
    out: *mut u32,
) -> Det3CertStatus {
    guard(|| {
        if out.is_null() {
            return Det3CertStatus::NullPointer;
        }
        match unsafe { parse_form(form_text) }
            .and_then(|f| invariants::stab_lie_dim(&f).map_err(|e| status_of(&e)))
        {
            Ok(dim) => {
                unsafe { *out = dim as u32 };
                Det3CertStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Projective orbit dimension (80 minus the stabilizer dimension) of the
/// form given in text format.
///
/// # Safety
/// `form_text` must be a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn det3cert_orbit_dim(
    form_text: *const c_char,
    out: *mut u32,
) -> Det3CertStatus {
    guard(|| {
        if out.is_null() {
            return Det3CertStatus::NullPointer;
        }
        match unsafe { parse_form(form_text) }
            .and_then(|f| invariants::orbit_dim(&f).map_err(|e| status_of(&e)))
        {
            Ok(dim) => {
                unsafe { *out = dim as u32 };
                Det3CertStatus::Ok
            }
            Err(status) => status,
        }
    })
}
