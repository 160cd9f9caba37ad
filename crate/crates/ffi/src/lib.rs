//! C ABI over rplus-core.
//!
//! Every entry point returns an [`RplusStatus`]; on failure the message is
//! available from [`rplus_last_error`] on the same thread. Strings handed out
//! by the library are owned by the caller and released with
//! [`rplus_string_free`].
//!
//! Pointer arguments must be NULL or valid: strings NUL-terminated, handles
//! live, out-parameters writable. NULL is reported as `NullPointer`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rplus::certificate::verify_certificate;
use rplus::field::NumberField;
use rplus::membership::{decide_membership_with, inverse_prime_in, DecideOptions};
use rplus::negone::certify_negative_one;
use rplus::poly::RatPoly;
use rplus::{json, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RplusStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotPrime = 4,
    Precondition = 5,
    Reducible = 6,
    IrreducibilityUndetermined = 7,
    DivisionByZero = 8,
    DepthCapExceeded = 9,
    BudgetExhausted = 10,
    Internal = 11,
    Panic = 12,
}

impl From<&Error> for RplusStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => RplusStatus::Parse,
            Error::NotPrime(_) => RplusStatus::NotPrime,
            Error::Precondition(_) => RplusStatus::Precondition,
            Error::Reducible(_) => RplusStatus::Reducible,
            Error::IrreducibilityUndetermined(_) => RplusStatus::IrreducibilityUndetermined,
            Error::DivisionByZero => RplusStatus::DivisionByZero,
            Error::DepthCapExceeded { .. } => RplusStatus::DepthCapExceeded,
            Error::BudgetExhausted(_) => RplusStatus::BudgetExhausted,
            Error::Internal(_) => RplusStatus::Internal,
        }
    }
}

/// Opaque number field handle.
pub struct RplusField {
    inner: NumberField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    // interior NULs cannot cross the boundary
    let msg = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(RplusStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(RplusStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RplusStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RplusStatus::Ok,
        Ok(Err(Failure(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("panic inside rplus".into());
            RplusStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(RplusStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(RplusStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn field_arg<'a>(p: *const RplusField) -> Result<&'a NumberField, Failure> {
    p.as_ref().map(|f| &f.inner).ok_or_else(|| Failure(RplusStatus::NullPointer, "field is null".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(RplusStatus::NullPointer, format!("{name} is null")))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NUL").into_raw()
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rplus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rplus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a minimal polynomial such as `"x^2-2"` or `"2x-1"`. With `trusted`
/// the irreducibility check is skipped.
#[no_mangle]
pub unsafe extern "C" fn rplus_field_new(poly: *const c_char, trusted: bool, out: *mut *mut RplusField) -> RplusStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let s = str_arg(poly, "poly")?;
        let m = RatPoly::parse(s)?;
        let inner = if trusted { NumberField::new_trusted(&m)? } else { NumberField::new(&m)? };
        *out = Box::into_raw(Box::new(RplusField { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rplus_field_free(field: *mut RplusField) {
    if !field.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(field))));
    }
}

/// Degree of the field, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn rplus_field_degree(field: *const RplusField) -> usize {
    field.as_ref().map_or(0, |f| f.inner.degree())
}

#[no_mangle]
pub unsafe extern "C" fn rplus_field_json(field: *const RplusField, out: *mut *mut c_char) -> RplusStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = owned(json::to_line(&json::field(field_arg(field)?)));
        Ok(())
    })
}

/// Whether β lies in the semiring generated by the defining element.
/// β is a rational such as `"1/2"` or a coordinate list such as `"[1/2,1/7]"`.
#[no_mangle]
pub unsafe extern "C" fn rplus_member(field: *const RplusField, beta: *const c_char, out: *mut bool) -> RplusStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let k = field_arg(field)?;
        let b = k.parse_elem(str_arg(beta, "beta")?)?;
        *out = decide_membership_with(k, &k.alpha(), &b, DecideOptions::default())?.member;
        Ok(())
    })
}

/// Full verdict as JSON, optionally with a certificate for members.
#[no_mangle]
pub unsafe extern "C" fn rplus_member_json(
    field: *const RplusField,
    beta: *const c_char,
    certify: bool,
    out: *mut *mut c_char,
) -> RplusStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let k = field_arg(field)?;
        let b = k.parse_elem(str_arg(beta, "beta")?)?;
        let v = decide_membership_with(k, &k.alpha(), &b, DecideOptions { certify, ..Default::default() })?;
        *out = owned(json::to_line(&json::verdict(&v)));
        Ok(())
    })
}

/// Whether 1/p is a member.
#[no_mangle]
pub unsafe extern "C" fn rplus_inverse_prime_in(field: *const RplusField, p: u64, out: *mut bool) -> RplusStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let k = field_arg(field)?;
        *out = inverse_prime_in(k, &k.alpha(), p)?;
        Ok(())
    })
}

/// A certificate for −1 as JSON: `{"target": [...], "terms": [[k, a], ...]}`.
#[no_mangle]
pub unsafe extern "C" fn rplus_neg_one_certificate_json(field: *const RplusField, out: *mut *mut c_char) -> RplusStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let c = certify_negative_one(field_arg(field)?)?;
        *out = owned(json::to_line(&json::certificate(&c)));
        Ok(())
    })
}

/// Checks a certificate in the JSON format above by exact recomputation.
#[no_mangle]
pub unsafe extern "C" fn rplus_verify_certificate_json(
    field: *const RplusField,
    cert: *const c_char,
    out: *mut bool,
) -> RplusStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let k = field_arg(field)?;
        let v: serde_json::Value = serde_json::from_str(str_arg(cert, "cert")?)
            .map_err(|e| Failure(RplusStatus::Parse, format!("bad certificate JSON: {e}")))?;
        *out = verify_certificate(k, &json::parse_certificate(k, &v)?);
        Ok(())
    })
}
