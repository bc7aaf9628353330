//! C ABI over `finring`.
//!
//! Rings are opaque `FinringRing` handles owned by the caller and released
//! with `finring_ring_free`. Every fallible call returns a `FinringStatus`;
//! on failure `finring_last_error` describes the most recent error on the
//! calling thread. Strings returned through `char **` out-parameters must be
//! released with `finring_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use finring::catalogue::{standard_catalogue, verify_catalogue};
use finring::cli::cayley_tables;
use finring::expr::{eval_str, ExprError};
use finring::{check_star_decomposition, classify, FiniteRing, FinringError, RingDoc};

/// Opaque ring handle.
pub struct FinringRing {
    ring: FiniteRing,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinringStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    EvalError = 4,
    OutOfRange = 5,
    CheckFailed = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> Result<(), (FinringStatus, String)>) -> FinringStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FinringStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FinringStatus::Panic
        }
    }
}

fn eval_failure(e: FinringError) -> (FinringStatus, String) {
    (FinringStatus::EvalError, e.to_string())
}

unsafe fn input<'a>(s: *const c_char) -> Result<&'a str, (FinringStatus, String)> {
    if s.is_null() {
        return Err((FinringStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (FinringStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a>(r: *const FinringRing) -> Result<&'a FiniteRing, (FinringStatus, String)> {
    r.as_ref().map(|h| &h.ring).ok_or((FinringStatus::NullPointer, "null ring handle".into()))
}

unsafe fn emit_ring(out: *mut *mut FinringRing, ring: FiniteRing) -> Result<(), (FinringStatus, String)> {
    if out.is_null() {
        return Err((FinringStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(FinringRing { ring }));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), (FinringStatus, String)> {
    if out.is_null() {
        return Err((FinringStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(|e| (FinringStatus::EvalError, e.to_string()))?.into_raw();
    Ok(())
}

/// Parses and evaluates a ring expression such as `"sdprod_alg(GF(2), GF(2))"`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_ring_from_expr(expr: *const c_char, out: *mut *mut FinringRing) -> FinringStatus {
    guard(|| {
        let text = input(expr)?;
        let ring = eval_str(text).map_err(|e| match e {
            ExprError::Parse(p) => (FinringStatus::ParseError, p.to_string()),
            other => (FinringStatus::EvalError, other.to_string()),
        })?;
        emit_ring(out, ring)
    })
}

/// Loads a ring from a JSON table document and verifies its axioms.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_ring_from_json(json: *const c_char, out: *mut *mut FinringRing) -> FinringStatus {
    guard(|| {
        let doc = RingDoc::from_json(input(json)?).map_err(|e| (FinringStatus::ParseError, e.to_string()))?;
        let ring = FiniteRing::from_doc(&doc, "json").map_err(eval_failure)?;
        emit_ring(out, ring)
    })
}

/// Releases a ring handle. Null is ignored.
///
/// # Safety
/// `ring` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn finring_ring_free(ring: *mut FinringRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn finring_ring_order(ring: *const FinringRing) -> usize {
    ring.as_ref().map_or(0, |h| h.ring.order())
}

unsafe fn binary(
    ring: *const FinringRing,
    a: usize,
    b: usize,
    out: *mut usize,
    op: fn(&FiniteRing, usize, usize) -> usize,
) -> FinringStatus {
    guard(|| {
        let r = handle(ring)?;
        if a >= r.order() || b >= r.order() {
            return Err((FinringStatus::OutOfRange, format!("element index outside 0..{}", r.order())));
        }
        if out.is_null() {
            return Err((FinringStatus::NullPointer, "null output pointer".into()));
        }
        *out = op(r, a, b);
        Ok(())
    })
}

/// `*out = a + b`.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_ring_add(ring: *const FinringRing, a: usize, b: usize, out: *mut usize) -> FinringStatus {
    binary(ring, a, b, out, FiniteRing::add)
}

/// `*out = a * b`.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_ring_mul(ring: *const FinringRing, a: usize, b: usize, out: *mut usize) -> FinringStatus {
    binary(ring, a, b, out, FiniteRing::mul)
}

/// Serializes the tables as a JSON ring document.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_ring_to_json(ring: *const FinringRing, out: *mut *mut c_char) -> FinringStatus {
    guard(|| emit_string(out, handle(ring)?.to_doc().to_json()))
}

/// Structure report (units, ideals, maximal ideals, subfields) as JSON.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_analyze_json(ring: *const FinringRing, out: *mut *mut c_char) -> FinringStatus {
    guard(|| {
        let rep = finring::structure::analyze(handle(ring)?).map_err(eval_failure)?;
        emit_string(out, serde_json::to_string(&rep).expect("reports serialize"))
    })
}

/// Decides (★).
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_has_star(ring: *const FinringRing, out: *mut bool) -> FinringStatus {
    guard(|| {
        let w = check_star_decomposition(handle(ring)?).map_err(eval_failure)?;
        if out.is_null() {
            return Err((FinringStatus::NullPointer, "null output pointer".into()));
        }
        *out = w.is_some();
        Ok(())
    })
}

/// Class (A)/(B) membership as JSON.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_classify_json(ring: *const FinringRing, out: *mut *mut c_char) -> FinringStatus {
    guard(|| {
        let r = handle(ring)?;
        let c = classify(r).map_err(eval_failure)?;
        emit_string(out, serde_json::to_string(&c.report(r)).expect("reports serialize"))
    })
}

/// Addition and multiplication tables in the CLI's text layout.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_cayley(ring: *const FinringRing, out: *mut *mut c_char) -> FinringStatus {
    guard(|| emit_string(out, cayley_tables(handle(ring)?)))
}

/// Runs the catalogue verification matrix. The JSON report is written to
/// `out` in every case; the status is `CHECK_FAILED` if any row fails.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn finring_verify_paper(out: *mut *mut c_char) -> FinringStatus {
    let mut failed = 0;
    let status = guard(|| {
        let rep = verify_catalogue(&standard_catalogue().map_err(eval_failure)?);
        failed = rep.failures().count();
        emit_string(out, rep.to_json())
    });
    if status == FinringStatus::Ok && failed > 0 {
        set_error(format!("{failed} catalogue checks failed"));
        return FinringStatus::CheckFailed;
    }
    status
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn finring_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn finring_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
