//! Calls the exported functions the way a C caller would.

use std::ffi::{CStr, CString};
use std::ptr;

use g2gen_ffi::*;

const CURVE: &str = r#"{"q": 13, "f": [0, 2, 9, 5, 2, 1]}"#;

fn curve() -> *mut G2Curve {
    let json = CString::new(CURVE).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { g2gen_curve_from_json(json.as_ptr(), &mut c) }, G2Status::Ok);
    c
}

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { g2gen_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(g2gen_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn curve_handles_and_order() {
    let c = curve();
    let mut order = 0;
    assert_eq!(unsafe { g2gen_curve_order(c, &mut order) }, G2Status::Ok);
    assert_eq!(order, 154);

    let f = [0i64, 2, 9, 5, 2, 1];
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { g2gen_curve_new(13, f.as_ptr(), f.len(), &mut d) }, G2Status::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { g2gen_info_json(d, 7, &mut out) }, G2Status::Ok);
    let info = take(out);
    assert_eq!(info["result"]["order"], 154);
    assert_eq!(info["result"]["ell"]["k"], 2);
    unsafe {
        g2gen_curve_free(c);
        g2gen_curve_free(d);
        g2gen_curve_free(ptr::null_mut());
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut c = ptr::null_mut();
    let singular = [0i64, 0, 0, 0, 0, 1];
    assert_eq!(unsafe { g2gen_curve_new(13, singular.as_ptr(), 6, &mut c) }, G2Status::Input);
    assert!(last_error().contains("singular"));
    assert!(c.is_null());

    let bad = CString::new("{\"q\": 13").unwrap();
    assert_eq!(unsafe { g2gen_curve_from_json(bad.as_ptr(), &mut c) }, G2Status::Input);
    assert_eq!(unsafe { g2gen_curve_from_json(ptr::null(), &mut c) }, G2Status::NullPointer);

    let c = curve();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { g2gen_classify_json(c, 3, &mut out) }, G2Status::Precondition);
    assert!(last_error().contains("q - 1"));
    let mut set = ptr::null_mut();
    assert_eq!(unsafe { g2gen_generators(c, 5, 3, 0, &mut set) }, G2Status::Precondition);
    assert!(set.is_null());
    let mut m = [0u64; 16];
    assert_eq!(unsafe { g2gen_generators_matrix(ptr::null(), 0, m.as_mut_ptr()) }, G2Status::NullPointer);
    assert_eq!(unsafe { g2gen_generators_pfaffian(ptr::null()) }, 0);
    unsafe { g2gen_curve_free(c) };
}

#[test]
fn generators_round_trip_through_verify() {
    let c = curve();
    let mut set = ptr::null_mut();
    assert_eq!(unsafe { g2gen_generators(c, 7, 3, 5, &mut set) }, G2Status::Ok, "{}", last_error());
    assert_ne!(unsafe { g2gen_generators_pfaffian(set) }, 0);
    assert!(unsafe { g2gen_generators_ambient_degree(set) } >= 1);

    let mut frob = [0u64; 16];
    assert_eq!(unsafe { g2gen_generators_matrix(set, 0, frob.as_mut_ptr()) }, G2Status::Ok);
    for i in 0..4 {
        for j in 0..4 {
            assert!(i == j || frob[4 * i + j] == 0);
        }
    }
    let mut pairing = [0u64; 16];
    assert_eq!(unsafe { g2gen_generators_matrix(set, 1, pairing.as_mut_ptr()) }, G2Status::Ok);
    for i in 0..4 {
        assert_eq!(pairing[5 * i], 0);
        for j in 0..4 {
            assert_eq!((pairing[4 * i + j] + pairing[4 * j + i]) % 7, 0);
        }
    }
    assert_eq!(unsafe { g2gen_generators_matrix(set, 2, pairing.as_mut_ptr()) }, G2Status::Input);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { g2gen_generators_json(set, 5, &mut out) }, G2Status::Ok);
    let mut report = take(out);
    assert_eq!(report["seed"], 5);
    let text = CString::new(report.to_string()).unwrap();
    assert_eq!(unsafe { g2gen_verify_json(text.as_ptr(), 0, &mut out) }, G2Status::Ok, "{}", last_error());
    assert_eq!(take(out)["result"]["is_basis"], true);

    report["result"]["points"][3] = report["result"]["points"][2].clone();
    let text = CString::new(report.to_string()).unwrap();
    assert_eq!(unsafe { g2gen_verify_json(text.as_ptr(), 0, &mut out) }, G2Status::Failure);
    assert_eq!(take(out)["result"]["is_basis"], false);

    unsafe {
        g2gen_generators_free(set);
        g2gen_curve_free(c);
    }
}
