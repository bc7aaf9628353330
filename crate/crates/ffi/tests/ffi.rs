use std::ffi::{c_char, CStr, CString};
use std::ptr;

use finring_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { finring_string_free(s) };
    out
}

fn last_error() -> String {
    let p = finring_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn ring(expr: &str) -> *mut FinringRing {
    let c = CString::new(expr).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { finring_ring_from_expr(c.as_ptr(), &mut out) }, FinringStatus::Ok);
    out
}

#[test]
fn arithmetic_through_handles() {
    let r = ring("sdprod_alg(GF(2), GF(2))");
    unsafe {
        assert_eq!(finring_ring_order(r), 4);
        let mut v = usize::MAX;
        // (1,0) * (0,1) = (1,0) and (1,0) * (1,1) = (0,0)
        assert_eq!(finring_ring_mul(r, 2, 1, &mut v), FinringStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(finring_ring_mul(r, 2, 3, &mut v), FinringStatus::Ok);
        assert_eq!(v, 0);
        assert_eq!(finring_ring_add(r, 3, 3, &mut v), FinringStatus::Ok);
        assert_eq!(v, 0);
        assert_eq!(finring_ring_add(r, 4, 0, &mut v), FinringStatus::OutOfRange);
        let mut star = false;
        assert_eq!(finring_has_star(r, &mut star), FinringStatus::Ok);
        assert!(star);
        let mut s = ptr::null_mut();
        assert_eq!(finring_cayley(r, &mut s), FinringStatus::Ok);
        assert!(take(s).contains("(1,1) | (0,0) (1,1) (0,0) (1,1)"));
        assert_eq!(finring_classify_json(r, &mut s), FinringStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert!(v["class_b"].is_object() && v["class_a"].is_null());
        finring_ring_free(r);
    }
}

#[test]
fn json_round_trip() {
    let r = ring("GF(4)");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(finring_ring_to_json(r, &mut s), FinringStatus::Ok);
        let json = CString::new(take(s)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(finring_ring_from_json(json.as_ptr(), &mut back), FinringStatus::Ok);
        assert_eq!(finring_ring_order(back), 4);
        assert_eq!(finring_analyze_json(back, &mut s), FinringStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["unit_count"], 3);
        finring_ring_free(back);
        finring_ring_free(r);
    }
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("product(GF(2), GF(2)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { finring_ring_from_expr(bad.as_ptr(), &mut out) }, FinringStatus::ParseError);
    assert!(out.is_null());
    assert!(last_error().contains("end-of-input"));

    let zero = CString::new("Zmod(0)").unwrap();
    assert_eq!(unsafe { finring_ring_from_expr(zero.as_ptr(), &mut out) }, FinringStatus::EvalError);

    let broken = CString::new(r#"{"order":2,"one":1,"add":[[0,1],[1,0]],"mul":[[0,0],[0,0]]}"#).unwrap();
    assert_eq!(unsafe { finring_ring_from_json(broken.as_ptr(), &mut out) }, FinringStatus::EvalError);
    assert!(last_error().contains("axiom"));

    assert_eq!(unsafe { finring_ring_from_expr(ptr::null(), &mut out) }, FinringStatus::NullPointer);
    let mut v = 0;
    assert_eq!(unsafe { finring_ring_add(ptr::null(), 0, 0, &mut v) }, FinringStatus::NullPointer);
    assert_eq!(unsafe { finring_ring_order(ptr::null()) }, 0);
    unsafe {
        finring_ring_free(ptr::null_mut());
        finring_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_paper_reports_all_pass() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { finring_verify_paper(&mut s) }, FinringStatus::Ok);
    let rows: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
    assert!(finring_last_error().is_null());
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/finring.h")).unwrap();
    for name in ["finring_ring_from_expr", "finring_ring_free", "finring_verify_paper", "finring_last_error", "FINRING_STATUS_OK"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
