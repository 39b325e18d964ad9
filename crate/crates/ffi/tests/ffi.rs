use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use kneading_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    kn_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = kn_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn pool(max: u32) -> *mut KnPool {
    let mut p = ptr::null_mut();
    assert_eq!(kn_pool_new(max, &mut p), KnStatus::Ok);
    assert!(!p.is_null());
    p
}

#[test]
fn pool_lifecycle() {
    unsafe {
        let p = pool(6);
        let mut len = 0usize;
        assert_eq!(kn_pool_len(p, &mut len), KnStatus::Ok);
        assert_eq!(len, 1 + 3 + 6 + 15 + 27);
        let mut max = 0u32;
        assert_eq!(kn_pool_max_period(p, &mut max), KnStatus::Ok);
        assert_eq!(max, 6);

        let mut json = ptr::null_mut();
        assert_eq!(kn_pool_to_json(p, &mut json), KnStatus::Ok);
        let json = take(json);
        let dir = tempfile_dir();
        let path = dir.join("pool.json");
        std::fs::write(&path, json).unwrap();
        let mut loaded = ptr::null_mut();
        assert_eq!(kn_pool_load(c(path.to_str().unwrap()).as_ptr(), &mut loaded), KnStatus::Ok);
        let mut len2 = 0usize;
        assert_eq!(kn_pool_len(loaded, &mut len2), KnStatus::Ok);
        assert_eq!(len, len2);
        kn_pool_free(loaded);
        kn_pool_free(p);
        kn_pool_free(ptr::null_mut());
        kn_string_free(ptr::null_mut());
        std::fs::remove_dir_all(dir).unwrap();
    }
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("kneading-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn kneading_of_lobster() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(kn_kneading(c("13/31").as_ptr(), c("18/31").as_ptr(), &mut out), KnStatus::Ok);
        assert_eq!(take(out), "BABBA");
        assert!(kn_last_error().is_null());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(kn_kneading(ptr::null(), c("1/3").as_ptr(), &mut out), KnStatus::NullPointer);
        assert!(last_error().contains("null"));
        assert_eq!(kn_kneading(c("x/y").as_ptr(), c("1/3").as_ptr(), &mut out), KnStatus::Parse);
        assert_eq!(kn_kneading(c("1/7").as_ptr(), c("3/7").as_ptr(), &mut out), KnStatus::InvalidComponent);
        assert_eq!(kn_kneading(c("1/3").as_ptr(), c("2/3").as_ptr(), ptr::null_mut()), KnStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(kn_kneading(bad.as_ptr() as *const c_char, c("2/3").as_ptr(), &mut out), KnStatus::InvalidUtf8);

        let mut len = 0usize;
        assert_eq!(kn_pool_len(ptr::null(), &mut len), KnStatus::NullPointer);
        let mut p = ptr::null_mut();
        assert_eq!(kn_pool_new(1, &mut p), KnStatus::Precondition);
        assert!(p.is_null());
        assert_eq!(kn_pool_load(c("/nonexistent/pool.json").as_ptr(), &mut p), KnStatus::Io);

        let small = pool(4);
        assert_eq!(kn_report_text(small, &mut out), KnStatus::PoolTooSmall);
        assert_eq!(
            kn_conspicuous_json(small, c("1/7").as_ptr(), c("2/7").as_ptr(), &mut out),
            KnStatus::Ok
        );
        kn_string_free(out);
        kn_pool_free(small);
    }
}

#[test]
fn crossing_pair_is_rejected_by_pool() {
    unsafe {
        let p = pool(5);
        let mut out = ptr::null_mut();
        let mut passed: c_int = -1;
        let s = kn_verify_json(p, c("1/31").as_ptr(), c("10/31").as_ptr(), &mut out, &mut passed);
        assert_eq!(s, KnStatus::InvalidComponent);
        assert!(last_error().contains("not a landing pair"));
        let s = kn_verify_json(p, c("3/31").as_ptr(), c("28/31").as_ptr(), &mut out, &mut passed);
        assert_eq!(s, KnStatus::InvalidComponent);
        assert!(last_error().contains("crossing chord"));
        assert_eq!(passed, -1);
        kn_pool_free(p);
    }
}

#[test]
fn verify_and_disc() {
    unsafe {
        let p = pool(6);
        let mut out = ptr::null_mut();
        let mut passed: c_int = -1;
        assert_eq!(kn_verify_json(p, c("2/5").as_ptr(), c("3/5").as_ptr(), &mut out, &mut passed), KnStatus::Ok);
        assert_eq!(passed, 1);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["report"]["covered"], serde_json::Value::Bool(true));

        let mut m = 0i64;
        assert_eq!(kn_disc_entry(c("1/3").as_ptr(), c("2/3").as_ptr(), c("1/6").as_ptr(), &mut m), KnStatus::Ok);
        assert_eq!(m, 1);
        assert_eq!(kn_disc_entry(c("1/3").as_ptr(), c("2/3").as_ptr(), c("0/1").as_ptr(), &mut m), KnStatus::Ok);
        assert_eq!(m, -1);

        assert_eq!(
            kn_marker_json(p, c("3/7").as_ptr(), c("4/7").as_ptr(), c("11/14").as_ptr(), &mut out),
            KnStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["marker"], "(⋆BA)*");

        assert_eq!(kn_report_text(p, &mut out), KnStatus::Ok);
        let text = take(out);
        assert!(text.starts_with("Example 1. H = (13/31,18/31) (Lobster)"));
        kn_pool_free(p);
    }
}

#[test]
fn header_lists_entry_points() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/kneading.h")).unwrap();
    for name in [
        "kn_last_error",
        "kn_string_free",
        "kn_pool_new",
        "kn_pool_load",
        "kn_pool_free",
        "kn_pool_len",
        "kn_pool_max_period",
        "kn_pool_to_json",
        "kn_kneading",
        "kn_conspicuous_json",
        "kn_verify_json",
        "kn_disc_entry",
        "kn_marker_json",
        "kn_report_text",
        "typedef struct KnPool KnPool",
        "KN_STATUS_PANIC = 9",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
