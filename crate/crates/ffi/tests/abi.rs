use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use extremal_ffi::*;

fn last_error() -> String {
    let p = ext_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn path_from(json: &str) -> *mut ExtPath {
    let c = CString::new(json).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ext_path_from_json(c.as_ptr(), &mut p) }, ExtStatus::Ok);
    p
}

const STEP: &str = r#"{"kind":"jump","horizon":[0,1],"times":[0.25,0.5,0.75],"sizes":[3,2,1],"initial":0}"#;

#[test]
fn path_json_round_trip() {
    let p = path_from(STEP);
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { ext_path_to_json(p, &mut s) }, ExtStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ext_string_free(s) };
    let q = path_from(&text);
    let mut s2: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { ext_path_to_json(q, &mut s2) }, ExtStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s2) }.to_str().unwrap(), text);
    unsafe {
        ext_string_free(s2);
        ext_path_free(p);
        ext_path_free(q);
    }
}

#[test]
fn majorant_and_extremal_times() {
    let p = path_from(STEP);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ext_majorant_of_path(p, &mut m) }, ExtStatus::Ok);
    let mut len = 0usize;
    assert_eq!(unsafe { ext_majorant_vertices(m, ptr::null_mut(), ptr::null_mut(), 0, &mut len) }, ExtStatus::BufferTooSmall);
    assert_eq!(len, 5);
    let (mut ts, mut vs) = (vec![0.0; len], vec![0.0; len]);
    assert_eq!(unsafe { ext_majorant_vertices(m, ts.as_mut_ptr(), vs.as_mut_ptr(), len, &mut len) }, ExtStatus::Ok);
    assert_eq!(ts, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    assert_eq!(vs, vec![0.0, 3.0, 5.0, 6.0, 6.0]);
    let mut slope = 0.0;
    assert_eq!(unsafe { ext_majorant_slope(m, 0.25, ExtSide::Right as c_int, &mut slope) }, ExtStatus::Ok);
    assert_eq!(slope, 8.0);
    assert_eq!(unsafe { ext_majorant_slope(m, 0.25, 7, &mut slope) }, ExtStatus::InvalidParameter);
    assert_eq!(unsafe { ext_majorant_slope(m, 0.0, ExtSide::Left as c_int, &mut slope) }, ExtStatus::InvalidParameter);
    assert!(!last_error().is_empty());

    let mut buf = [0.0; 8];
    assert_eq!(unsafe { ext_extremal_times(p, 0, buf.as_mut_ptr(), buf.len(), &mut len) }, ExtStatus::Ok);
    assert_eq!(&buf[..len], &[0.0, 0.25, 0.5, 0.75, 1.0]);
    assert_eq!(unsafe { ext_extremal_times(p, 1, buf.as_mut_ptr(), buf.len(), &mut len) }, ExtStatus::Ok);
    // the left limit 0 at 0.25 is a corner of the convex minorant
    assert_eq!(&buf[..len], &[0.0, 0.25, 1.0]);
    unsafe {
        ext_majorant_free(m);
        ext_path_free(p);
    }
}

#[test]
fn null_and_bad_input() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ext_path_from_json(ptr::null(), &mut p) }, ExtStatus::NullPointer);
    let bad = CString::new("{\"kind\":\"jump\"").unwrap();
    assert_eq!(unsafe { ext_path_from_json(bad.as_ptr(), &mut p) }, ExtStatus::MalformedConfig);
    assert!(p.is_null());
    let bad = CString::new(r#"{"kind":"grid","t0":0,"h":-1,"values":[0,1]}"#).unwrap();
    assert_eq!(unsafe { ext_path_from_json(bad.as_ptr(), &mut p) }, ExtStatus::MalformedConfig);
    assert!(last_error().contains("grid step"));
    let mut d = 0.0;
    assert_eq!(unsafe { ext_hausdorff(ptr::null(), 0, [1.0].as_ptr(), 1, &mut d) }, ExtStatus::UndefinedDistance);
    assert_eq!(unsafe { ext_hausdorff(ptr::null(), 2, [1.0].as_ptr(), 1, &mut d) }, ExtStatus::NullPointer);
    unsafe {
        ext_path_free(ptr::null_mut());
        ext_string_free(ptr::null_mut());
        ext_majorant_free(ptr::null_mut());
    }
}

#[test]
fn hausdorff_values() {
    let mut d = 0.0;
    let a = [0.0, 1.0];
    let b = [0.0, 0.5, 1.0];
    assert_eq!(unsafe { ext_hausdorff(a.as_ptr(), 2, b.as_ptr(), 3, &mut d) }, ExtStatus::Ok);
    assert_eq!(d, 0.5);
}

#[test]
fn simulation_is_seeded() {
    let measure = CString::new(r#"{"components":[{"family":"stable_like","c_plus":1,"c_minus":1,"alpha":0.5}]}"#).unwrap();
    let json = |seed| {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { ext_simulate_levy(measure.as_ptr(), 1e-3, 0.0, 1.0, seed, &mut p) }, ExtStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { ext_path_to_json(p, &mut s) }, ExtStatus::Ok);
        let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
        unsafe {
            ext_string_free(s);
            ext_path_free(p);
        }
        out
    };
    assert_eq!(json(3), json(3));
    assert_ne!(json(3), json(4));
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ext_simulate_levy(measure.as_ptr(), 0.0, 0.0, 1.0, 1, &mut p) }, ExtStatus::InvalidSpec);
    assert_eq!(unsafe { ext_simulate_brownian(0.0, 1.0, 0, 1, &mut p) }, ExtStatus::InvalidParameter);
    assert_eq!(unsafe { ext_simulate_brownian(0.0, 1.0, 64, 1, &mut p) }, ExtStatus::Ok);
    let mut len = 0;
    assert_eq!(unsafe { ext_extremal_times(p, 0, ptr::null_mut(), 0, &mut len) }, ExtStatus::BufferTooSmall);
    assert!(len >= 2);
    unsafe { ext_path_free(p) };
}

#[test]
fn hopf_cole_flat_potential() {
    let p = path_from(r#"{"kind":"grid","t0":0,"h":0.25,"values":[0,0,0,0,0]}"#);
    let xs = [0.0, 0.25, 0.5];
    let mut out = [1.0; 3];
    assert_eq!(unsafe { ext_hopf_cole(p, 1.0, xs.as_ptr(), 3, out.as_mut_ptr()) }, ExtStatus::Ok);
    assert!(out.iter().all(|v| v.abs() < 1e-15));
    assert_eq!(unsafe { ext_hopf_cole(p, 0.0, xs.as_ptr(), 3, out.as_mut_ptr()) }, ExtStatus::InvalidParameter);
    unsafe { ext_path_free(p) };
}

#[test]
fn sticky_and_experiment() {
    let mut agrees = 0;
    let v = [1.0, -1.0, 0.5];
    assert_eq!(unsafe { ext_sticky_verify(v.as_ptr(), 3, &mut agrees) }, ExtStatus::Ok);
    assert_eq!(agrees, 1);
    let cfg = CString::new(r#"{"experiment":"sticky_theorem","seed":5,"replicas":20}"#).unwrap();
    let (mut s, mut passed) = (ptr::null_mut(), 0);
    assert_eq!(unsafe { ext_run_experiment_json(cfg.as_ptr(), &mut s, &mut passed) }, ExtStatus::Ok);
    assert_eq!(passed, 1);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap();
    assert!(text.contains("\"schema_version\": 1"));
    unsafe { ext_string_free(s) };
    let cfg = CString::new(r#"{"experiment":"warp_drive"}"#).unwrap();
    assert_eq!(unsafe { ext_run_experiment_json(cfg.as_ptr(), &mut s, &mut passed) }, ExtStatus::UnknownExperiment);
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/extremal.h");
    for name in [
        "ext_last_error_message",
        "ext_string_free",
        "ext_path_from_json",
        "ext_path_to_json",
        "ext_path_free",
        "ext_simulate_levy",
        "ext_simulate_brownian",
        "ext_majorant_of_path",
        "ext_majorant_free",
        "ext_majorant_vertices",
        "ext_majorant_slope",
        "ext_extremal_times",
        "ext_hausdorff",
        "ext_hopf_cole",
        "ext_sticky_verify",
        "ext_run_experiment_json",
        "EXT_STATUS_BUFFER_TOO_SMALL",
        "typedef struct ExtPath ExtPath;",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
