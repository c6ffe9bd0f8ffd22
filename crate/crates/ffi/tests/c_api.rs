use std::ffi::{c_char, CStr, CString};
use std::ptr;

use motzkin_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mz_string_free(s) };
    out
}

fn param(text: &str) -> *mut MzParam {
    let t = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_param_parse(t.as_ptr(), &mut p) }, MzStatus::Ok);
    p
}

#[test]
fn motzkin_numbers() {
    let got: Vec<String> = (0..8)
        .map(|k| {
            let mut s = ptr::null_mut();
            assert_eq!(unsafe { mz_count_motzkin(k, &mut s) }, MzStatus::Ok);
            take(s)
        })
        .collect();
    assert_eq!(got.join(","), "1,1,2,4,9,21,51,127");
}

#[test]
fn gram_rank_at_root_of_unity() {
    let p = param("cos:4");
    let mut r = 0usize;
    assert_eq!(unsafe { mz_gns_dim(p, 7, &mut r) }, MzStatus::Ok);
    assert_eq!(r, 120);
    unsafe { mz_param_free(p) };
}

#[test]
fn idempotent_squares_to_itself() {
    let p = param("4");
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mz_jw(p, 2, &mut g) }, MzStatus::Ok);
    let mut gg = ptr::null_mut();
    assert_eq!(unsafe { mz_elem_mul(g, g, &mut gg) }, MzStatus::Ok);
    let mut same = false;
    assert_eq!(unsafe { mz_elem_equal(g, gg, &mut same) }, MzStatus::Ok);
    assert!(same);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { mz_elem_trace(g, &mut t) }, MzStatus::Ok);
    assert_eq!(take(t), "1/2");
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { mz_elem_to_json(g, &mut j) }, MzStatus::Ok);
    assert!(take(j).starts_with(['{', '[']));
    unsafe {
        mz_elem_free(gg);
        mz_elem_free(g);
        mz_param_free(p);
    }
}

#[test]
fn words_multiply() {
    let p = param("4");
    let w = CString::new("e1*e1").unwrap();
    let v = CString::new("4*e1").unwrap();
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(mz_elem_parse(p, w.as_ptr(), 2, &mut a), MzStatus::Ok);
        assert_eq!(mz_elem_parse(p, v.as_ptr(), 2, &mut b), MzStatus::Ok);
        let mut same = false;
        assert_eq!(mz_elem_equal(a, b, &mut same), MzStatus::Ok);
        assert!(same);
        mz_elem_free(a);
        mz_elem_free(b);
        mz_param_free(p);
    }
}

#[test]
fn fusion_labels() {
    let p = param("cos:5");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mz_fuse(p, 2, 1, 3, 2, &mut s) }, MzStatus::Ok);
    assert_eq!(take(s), "[[5,1],[5,3]]");
    unsafe { mz_param_free(p) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("not a number").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mz_param_parse(bad.as_ptr(), &mut p) }, MzStatus::Parse);
    assert!(p.is_null());
    let msg = unsafe { CStr::from_ptr(mz_last_error()) }.to_str().unwrap();
    assert!(msg.contains("parse"), "{msg}");

    assert_eq!(unsafe { mz_param_parse(ptr::null(), &mut p) }, MzStatus::NullPointer);

    let two = param("2");
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mz_jw(two, 3, &mut g) }, MzStatus::Genericity);
    let mut r = 0usize;
    assert_eq!(unsafe { mz_gns_dim(ptr::null(), 3, &mut r) }, MzStatus::NullPointer);

    let w = CString::new("e1").unwrap();
    let v = CString::new("e1").unwrap();
    let (mut a, mut b, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(mz_elem_parse(two, w.as_ptr(), 2, &mut a), MzStatus::Ok);
        assert_eq!(mz_elem_parse(two, v.as_ptr(), 3, &mut b), MzStatus::Ok);
        assert_eq!(mz_elem_mul(a, b, &mut c), MzStatus::Shape);
        mz_elem_free(a);
        mz_elem_free(b);
        mz_param_free(two);
        mz_string_free(ptr::null_mut());
    }
}
