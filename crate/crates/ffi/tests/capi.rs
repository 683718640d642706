use std::ffi::{CStr, CString};
use std::ptr;

use moconad_ffi::*;

const PARITY: &str = include_str!("../../core/tests/fixtures/parity.json");
const CHANGE_FIRST_A: &str = include_str!("../../core/tests/fixtures/change_first_a.json");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    moconad_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = moconad_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn parity() -> *mut MoconadTransduction {
    let mut t = ptr::null_mut();
    assert_eq!(moconad_transduction_from_json(c(PARITY).as_ptr(), &mut t), MoconadStatus::Ok);
    t
}

#[test]
fn apply_prefix_parity() {
    unsafe {
        let t = parity();
        let mut out = ptr::null_mut();
        assert_eq!(moconad_transduction_apply(t, c("[1,0,1,1]").as_ptr(), &mut out), MoconadStatus::Ok);
        assert_eq!(take(out), r#"{"kind":"word","letters":[1,1,0,1]}"#);
        moconad_transduction_free(t);
    }
}

#[test]
fn compose_then_apply_matches_sequential() {
    unsafe {
        let t = parity();
        let mut tt = ptr::null_mut();
        assert_eq!(moconad_transduction_compose(t, t, &mut tt), MoconadStatus::Ok);
        let mut once = ptr::null_mut();
        let mut out = ptr::null_mut();
        assert_eq!(moconad_transduction_apply(t, c("[1,0,1]").as_ptr(), &mut once), MoconadStatus::Ok);
        let once = take(once);
        let mut twice = ptr::null_mut();
        assert_eq!(moconad_transduction_apply(t, c(&once).as_ptr(), &mut twice), MoconadStatus::Ok);
        assert_eq!(moconad_transduction_apply(tt, c("[1,0,1]").as_ptr(), &mut out), MoconadStatus::Ok);
        assert_eq!(take(out), take(twice));
        moconad_transduction_free(tt);
        moconad_transduction_free(t);
    }
}

#[test]
fn to_json_round_trips() {
    unsafe {
        let t = parity();
        let mut out = ptr::null_mut();
        assert_eq!(moconad_transduction_to_json(t, &mut out), MoconadStatus::Ok);
        let text = take(out);
        let mut back = ptr::null_mut();
        assert_eq!(moconad_transduction_from_json(c(&text).as_ptr(), &mut back), MoconadStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(moconad_transduction_to_json(back, &mut again), MoconadStatus::Ok);
        assert_eq!(take(again), text);
        moconad_transduction_free(back);
        moconad_transduction_free(t);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(moconad_transduction_from_json(ptr::null(), &mut t), MoconadStatus::NullPointer);
        assert_eq!(moconad_transduction_from_json(c("{not json").as_ptr(), &mut t), MoconadStatus::Schema);
        assert!(t.is_null());

        let t = parity();
        let mut out = ptr::null_mut();
        assert_eq!(moconad_transduction_apply(t, c(r#"["z"]"#).as_ptr(), &mut out), MoconadStatus::Domain);
        assert!(last_error().contains("position 1"), "{}", last_error());
        assert!(out.is_null());
        moconad_transduction_free(t);

        moconad_transduction_free(ptr::null_mut());
        moconad_mealy_free(ptr::null_mut());
        moconad_string_free(ptr::null_mut());
    }
}

#[test]
fn mealy_runs() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(moconad_mealy_from_json(c(CHANGE_FIRST_A).as_ptr(), &mut m), MoconadStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(moconad_mealy_run(m, c(r#"["a","a","b"]"#).as_ptr(), &mut out), MoconadStatus::Ok);
        assert_eq!(take(out), r#"["c","d","d"]"#);
        moconad_mealy_free(m);

        let mut t = ptr::null_mut();
        assert_eq!(moconad_mealy_from_json(c(PARITY).as_ptr(), &mut t), MoconadStatus::Schema);
    }
}

#[test]
fn laws_pass_for_prefix_lists() {
    unsafe {
        let mut passed = -1;
        let mut report = ptr::null_mut();
        let status = moconad_check_laws(c("prefix-list").as_ptr(), 3, 2, &mut passed, &mut report);
        assert_eq!(status, MoconadStatus::Ok);
        assert_eq!(passed, 1);
        let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(report["laws"].as_array().unwrap().len(), 23);

        assert_eq!(moconad_check_laws(c("nope").as_ptr(), 0, 0, &mut passed, ptr::null_mut()), MoconadStatus::Schema);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/header.c"))
        .status()
    else {
        eprintln!("no C compiler available; skipping");
        return;
    };
    assert!(status.success());
}
