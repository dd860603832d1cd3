use std::ffi::{CStr, CString};
use std::ptr;

use burnside_kit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { bk_string_free(p) };
    s
}

fn last_error() -> String {
    let m = bk_last_error_message();
    assert!(!m.is_null());
    unsafe { CStr::from_ptr(m) }.to_string_lossy().into_owned()
}

fn fixture(name: &str, field: Option<&str>) -> *mut BkProblem {
    let mut p = ptr::null_mut();
    let f = field.map(c);
    let fp = f.as_ref().map_or(ptr::null(), |f| f.as_ptr());
    assert_eq!(unsafe { bk_problem_from_fixture(c(name).as_ptr(), fp, &mut p) }, BkStatus::Ok);
    p
}

#[test]
fn diamond_ext_table() {
    let p = fixture("diamond", None);
    let mut e1 = vec![vec![0usize; 4]; 4];
    for (i, row) in e1.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            assert_eq!(unsafe { bk_ext_dim(p, 1, i, j, x) }, BkStatus::Ok);
        }
    }
    assert_eq!(e1, vec![vec![0, 1, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
    let mut x = 0;
    assert_eq!(unsafe { bk_ext_dim(p, 1, 4, 0, &mut x) }, BkStatus::OutOfRange);
    assert!(last_error().contains("4 members"));
    unsafe { bk_problem_free(p) };
}

#[test]
fn verify_matches_the_library() {
    let p = fixture("hereditary", Some("Fp:7"));
    let mut v = BkVerdict::Fail;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { bk_verify(p, BK_THEOREM_GBT, 0, &mut v, &mut json) }, BkStatus::Ok);
    assert_eq!(v, BkVerdict::Pass);
    let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(report["dim_algebra"], 7);
    assert_eq!(unsafe { bk_verify(p, 9, 0, &mut v, ptr::null_mut()) }, BkStatus::OutOfRange);
    unsafe { bk_problem_free(p) };
}

#[test]
fn closure_on_a_selected_subfamily() {
    let p = fixture("diamond", None);
    let mut sub = ptr::null_mut();
    let members = [0usize, 3];
    assert_eq!(unsafe { bk_problem_select(p, members.as_ptr(), 2, &mut sub) }, BkStatus::Ok);
    let mut v = BkVerdict::Fail;
    assert_eq!(unsafe { bk_verify(sub, BK_THEOREM_CLOSURE, 4, &mut v, ptr::null_mut()) }, BkStatus::Ok);
    assert_eq!(v, BkVerdict::Pass);
    let bad = [7usize];
    let mut other = ptr::null_mut();
    assert_eq!(unsafe { bk_problem_select(p, bad.as_ptr(), 1, &mut other) }, BkStatus::OutOfRange);
    unsafe {
        bk_problem_free(sub);
        bk_problem_free(p);
    }
}

#[test]
fn unstable_hull_is_refused_not_an_error() {
    let p = fixture("kronecker", None);
    let mut v = BkVerdict::Pass;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { bk_verify(p, BK_THEOREM_GBT, 0, &mut v, &mut json) }, BkStatus::Ok);
    assert_eq!(v, BkVerdict::Refused);
    assert!(take_string(json).contains("reason"));
    unsafe { bk_problem_free(p) };
}

#[test]
fn documents_round_trip() {
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { bk_fixture_json(c("m2").as_ptr(), ptr::null(), &mut doc) }, BkStatus::Ok);
    let text = take_string(doc);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bk_problem_from_json(c(&text).as_ptr(), ptr::null(), &mut p) }, BkStatus::Ok);
    let mut dim = 0;
    assert_eq!(unsafe { bk_problem_algebra_dim(p, &mut dim) }, BkStatus::Ok);
    assert_eq!(dim, 4);
    let mut hull = ptr::null_mut();
    assert_eq!(unsafe { bk_hull_json(p, 0, &mut hull) }, BkStatus::Ok);
    let h: serde_json::Value = serde_json::from_str(&take_string(hull)).unwrap();
    assert_eq!(h["total_dim"], 1);
    unsafe { bk_problem_free(p) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bk_problem_from_json(ptr::null(), ptr::null(), &mut p) }, BkStatus::NullArgument);
    assert_eq!(unsafe { bk_problem_from_json(c("[1, 2]").as_ptr(), ptr::null(), &mut p) }, BkStatus::InvalidInput);
    assert_eq!(unsafe { bk_problem_from_fixture(c("nope").as_ptr(), ptr::null(), &mut p) }, BkStatus::InvalidInput);
    assert_eq!(
        unsafe { bk_problem_from_fixture(c("diamond").as_ptr(), c("Fp:6").as_ptr(), &mut p) },
        BkStatus::InvalidInput
    );
    assert!(!last_error().is_empty());
    assert!(p.is_null());
    let mut n = 0;
    assert_eq!(unsafe { bk_problem_algebra_dim(ptr::null(), &mut n) }, BkStatus::NullArgument);
    let invalid = [0x66u8, 0xff, 0];
    assert_eq!(unsafe { bk_problem_from_json(invalid.as_ptr().cast(), ptr::null(), &mut p) }, BkStatus::InvalidUtf8);
    unsafe {
        bk_problem_free(ptr::null_mut());
        bk_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(bk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn success_clears_the_error_message() {
    let mut p = ptr::null_mut();
    let _ = unsafe { bk_problem_from_fixture(c("nope").as_ptr(), ptr::null(), &mut p) };
    assert!(!bk_last_error_message().is_null());
    let p = fixture("chain2", None);
    assert!(bk_last_error_message().is_null());
    unsafe { bk_problem_free(p) };
}
