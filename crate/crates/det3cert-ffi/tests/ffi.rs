//! Exercises the C entry points from Rust, including the null and error
//! paths a foreign caller could hit.

use std::ffi::{CStr, CString};
use std::ptr;

use det3cert_ffi::*;

#[test]
fn run_all_produces_a_clean_report() {
    let mut report: *mut Det3CertReport = ptr::null_mut();
    let status = unsafe { det3cert_run_all(0, 3, &mut report) };
    assert_eq!(status, Det3CertStatus::Ok);
    assert!(!report.is_null());

    unsafe {
        assert_eq!(det3cert_report_total(report), 20);
        assert_eq!(det3cert_report_failures(report), 0);
        assert_eq!(det3cert_report_inconclusive(report), 0);

        let json = det3cert_report_json(report);
        assert!(!json.is_null());
        let text = CStr::from_ptr(json).to_str().unwrap();
        let parsed: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(parsed["summary"]["pass"], 20);
        assert_eq!(parsed["seed"], 0);

        det3cert_report_free(report);
    }
}

#[test]
fn run_single_check() {
    let id = CString::new("lemma1.det3.stab_dim").unwrap();
    let mut report: *mut Det3CertReport = ptr::null_mut();
    let status = unsafe { det3cert_run_check(id.as_ptr(), 1, 2, &mut report) };
    assert_eq!(status, Det3CertStatus::Ok);
    unsafe {
        assert_eq!(det3cert_report_total(report), 1);
        assert_eq!(det3cert_report_failures(report), 0);
        let text = CStr::from_ptr(det3cert_report_json(report))
            .to_str()
            .unwrap();
        assert!(text.contains("\"observed\": \"16\""));
        det3cert_report_free(report);
    }
}

#[test]
fn unknown_check_id_reports_the_right_status() {
    let id = CString::new("nonexistent").unwrap();
    let mut report: *mut Det3CertReport = ptr::null_mut();
    let status = unsafe { det3cert_run_check(id.as_ptr(), 0, 1, &mut report) };
    assert_eq!(status, Det3CertStatus::UnknownCheck);
    assert!(report.is_null());
}

#[test]
fn null_arguments_are_rejected_not_dereferenced() {
    let status = unsafe { det3cert_run_all(0, 1, ptr::null_mut()) };
    assert_eq!(status, Det3CertStatus::NullPointer);

    let mut out: u32 = 0;
    let status = unsafe { det3cert_nu(ptr::null(), &mut out) };
    assert_eq!(status, Det3CertStatus::NullPointer);

    let id = CString::new("lemma3.nu.det3").unwrap();
    let mut report: *mut Det3CertReport = ptr::null_mut();
    let status = unsafe { det3cert_run_check(id.as_ptr(), 0, 1, &mut report) };
    assert_eq!(status, Det3CertStatus::Ok);
    unsafe { det3cert_report_free(report) };

    // accessors tolerate null
    unsafe {
        assert!(det3cert_report_json(ptr::null()).is_null());
        assert_eq!(det3cert_report_total(ptr::null()), 0);
        det3cert_report_free(ptr::null_mut());
        det3cert_string_free(ptr::null_mut());
    }
}

#[test]
fn list_checks_round_trip() {
    let raw = det3cert_list_checks();
    assert!(!raw.is_null());
    let listed = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_string();
    unsafe { det3cert_string_free(raw) };
    let ids: Vec<&str> = listed.lines().collect();
    assert_eq!(ids.len(), 20);
    assert_eq!(ids[0], "lemma1.det3.stab_dim");
}

#[test]
fn invariants_over_the_text_format() {
    let det3_text = CString::new(det3cert::det3().to_text()).unwrap();
    let mut out: u32 = 0;

    let status = unsafe { det3cert_nu(det3_text.as_ptr(), &mut out) };
    assert_eq!(status, Det3CertStatus::Ok);
    assert_eq!(out, 9);

    let status = unsafe { det3cert_stab_lie_dim(det3_text.as_ptr(), &mut out) };
    assert_eq!(status, Det3CertStatus::Ok);
    assert_eq!(out, 16);

    let status = unsafe { det3cert_orbit_dim(det3_text.as_ptr(), &mut out) };
    assert_eq!(status, Det3CertStatus::Ok);
    assert_eq!(out, 64);

    let p1_text = CString::new(det3cert::p1().to_text()).unwrap();
    let status = unsafe { det3cert_orbit_dim(p1_text.as_ptr(), &mut out) };
    assert_eq!(status, Det3CertStatus::Ok);
    assert_eq!(out, 63);
}

#[test]
fn malformed_form_text_is_a_parse_error() {
    let bad = CString::new("this is not a form").unwrap();
    let mut out: u32 = 0;
    let status = unsafe { det3cert_nu(bad.as_ptr(), &mut out) };
    assert_eq!(status, Det3CertStatus::ParseError);
}

#[test]
fn generated_header_exists_and_names_the_entry_points() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("det3cert.h");
    let text = std::fs::read_to_string(&header).expect("header generated at build time");
    for symbol in [
        "det3cert_run_all",
        "det3cert_run_check",
        "det3cert_report_json",
        "det3cert_report_free",
        "det3cert_list_checks",
        "det3cert_string_free",
        "det3cert_nu",
        "det3cert_stab_lie_dim",
        "det3cert_orbit_dim",
        "det3cert_status",
        "det3cert_report",
    ] {
        assert!(text.contains(symbol), "header is missing {symbol}");
    }
}
