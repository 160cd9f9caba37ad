use std::ffi::{c_char, CStr, CString};
use std::ptr;

use rplus_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    rplus_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(rplus_last_error()).to_string_lossy().into_owned()
}

unsafe fn field(m: &str) -> *mut RplusField {
    let mut f = ptr::null_mut();
    assert_eq!(rplus_field_new(cs(m).as_ptr(), false, &mut f), RplusStatus::Ok);
    f
}

#[test]
fn membership_through_the_abi() {
    unsafe {
        let f = field("x^2-2");
        assert_eq!(rplus_field_degree(f), 2);
        let mut b = false;
        assert_eq!(rplus_member(f, cs("1/2").as_ptr(), &mut b), RplusStatus::Ok);
        assert!(b);
        assert_eq!(rplus_member(f, cs("[1/2,1/7]").as_ptr(), &mut b), RplusStatus::Ok);
        assert!(!b);
        assert_eq!(rplus_inverse_prime_in(f, 7, &mut b), RplusStatus::Ok);
        assert!(!b);
        assert_eq!(rplus_inverse_prime_in(f, 3, &mut b), RplusStatus::Ok);
        assert!(b);
        let mut s = ptr::null_mut();
        assert_eq!(rplus_member_json(f, cs("1/2").as_ptr(), true, &mut s), RplusStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["member"], true);
        assert!(v["certificate"]["terms"].is_array());
        rplus_field_free(f);
    }
}

#[test]
fn certificates_round_trip() {
    unsafe {
        let f = field("2x-1");
        let mut s = ptr::null_mut();
        assert_eq!(rplus_neg_one_certificate_json(f, &mut s), RplusStatus::Ok);
        let cert = take(s);
        let mut ok = false;
        assert_eq!(rplus_verify_certificate_json(f, cs(&cert).as_ptr(), &mut ok), RplusStatus::Ok);
        assert!(ok);
        let forged = r#"{"target":["-1"],"terms":[[2,7]]}"#;
        assert_eq!(rplus_verify_certificate_json(f, cs(forged).as_ptr(), &mut ok), RplusStatus::Ok);
        assert!(!ok);
        assert_eq!(rplus_verify_certificate_json(f, cs("{").as_ptr(), &mut ok), RplusStatus::Parse);
        rplus_field_free(f);
    }
}

#[test]
fn errors_map_to_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(rplus_field_new(cs("x^2").as_ptr(), false, &mut f), RplusStatus::Reducible);
        assert!(f.is_null());
        assert!(last_error().contains("reducible"));
        assert_eq!(rplus_field_new(cs("x^^2").as_ptr(), false, &mut f), RplusStatus::Parse);
        assert_eq!(rplus_field_new(ptr::null(), false, &mut f), RplusStatus::NullPointer);
        assert_eq!(rplus_field_new(cs("x-1").as_ptr(), false, ptr::null_mut()), RplusStatus::NullPointer);

        let f = field("x^2+1");
        let mut b = false;
        assert_eq!(rplus_inverse_prime_in(f, 9, &mut b), RplusStatus::NotPrime);
        assert_eq!(rplus_member(f, cs("1/0").as_ptr(), &mut b), RplusStatus::DivisionByZero);
        assert_eq!(rplus_member(ptr::null(), cs("1").as_ptr(), &mut b), RplusStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(rplus_member(f, bad.as_ptr().cast(), &mut b), RplusStatus::InvalidUtf8);
        rplus_field_free(f);
        rplus_field_free(ptr::null_mut());
        rplus_string_free(ptr::null_mut());
        assert_eq!(rplus_field_degree(ptr::null()), 0);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/rplus.h")).unwrap();
    for f in [
        "rplus_last_error",
        "rplus_string_free",
        "rplus_field_new",
        "rplus_field_free",
        "rplus_field_degree",
        "rplus_field_json",
        "rplus_member",
        "rplus_member_json",
        "rplus_inverse_prime_in",
        "rplus_neg_one_certificate_json",
        "rplus_verify_certificate_json",
        "RPLUS_STATUS_NULL_POINTER = 1",
        "typedef struct RplusField RplusField",
    ] {
        assert!(h.contains(f), "{f}");
    }
}
