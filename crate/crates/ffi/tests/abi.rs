use std::ffi::{c_char, CStr, CString};
use std::ptr;

use npf_ffi::*;

fn parse(text: &str) -> *mut NpfSeries {
    let c = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { npf_series_parse(c.as_ptr(), &mut s) }, NpfStatus::Ok);
    s
}

fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { npf_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(npf_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn parse_print_multiply() {
    let a = parse("vars x y\ny - x");
    let b = parse("vars x y\ny + x");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { npf_series_multiply(a, b, -1, &mut p) }, NpfStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { npf_series_to_string(p, &mut text) }, NpfStatus::Ok);
    assert_eq!(take(text), "field Q\nvars x y\n-x^2 + y^2\n");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { npf_series_multiply(a, b, 1, &mut t) }, NpfStatus::Ok);
    let mut text = ptr::null_mut();
    unsafe { npf_series_to_string(t, &mut text) };
    assert!(take(text).contains("trunc 1"));
    unsafe {
        npf_series_free(a);
        npf_series_free(b);
        npf_series_free(p);
        npf_series_free(t);
    }
}

#[test]
fn lift_node() {
    let f = parse("vars x y\ny^2 - x^2 - x^3");
    let (a, b) = ([2i64, 0], [0i64, 2]);
    let (g_text, h_text) = (CString::new("y - x").unwrap(), CString::new("y + x").unwrap());
    let (mut g, mut h) = (ptr::null_mut(), ptr::null_mut());
    let st = unsafe { npf_lift(f, a.as_ptr(), b.as_ptr(), 2, g_text.as_ptr(), h_text.as_ptr(), 5, 1, &mut g, &mut h) };
    assert_eq!(st, NpfStatus::Ok, "{}", last_error());
    let mut text = ptr::null_mut();
    unsafe { npf_series_to_string(g, &mut text) };
    assert!(take(text).ends_with("-x + y - 1/2*x^2 + 1/8*x^3 - 1/16*x^4 + 5/128*x^5\n"));
    unsafe {
        npf_series_free(f);
        npf_series_free(g);
        npf_series_free(h);
    }
}

#[test]
fn json_outputs() {
    let f = parse("x3^3 + x1*x2*x3^2 + x1*x2*x3 + x1^2*x2^2");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { npf_edges_json(f, &mut out) }, NpfStatus::Ok);
    let j: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(j["schema"], "npf/1");
    assert_eq!(j["compact_edges"].as_array().unwrap().len(), 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { npf_screen_json(f, 6, &mut out) }, NpfStatus::Ok);
    let j: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(j["status"], "ReducibleWithWitness");
    unsafe { npf_series_free(f) };
}

#[test]
fn error_codes() {
    let bad = CString::new("x1 + + x2").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { npf_series_parse(bad.as_ptr(), &mut s) }, NpfStatus::Parse);
    assert!(last_error().contains("syntax"));
    assert_eq!(unsafe { npf_series_parse(ptr::null(), &mut s) }, NpfStatus::NullPointer);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { npf_series_parse(invalid.as_ptr().cast(), &mut s) }, NpfStatus::Utf8);

    let f = parse("x3^3 + x1*x2*x3^2 + x1*x2*x3 + x1^2*x2^2");
    let (g_text, h_text) = (CString::new("x2*x3 + x1*x2^2").unwrap(), CString::new("x1").unwrap());
    let (mut g, mut h) = (ptr::null_mut(), ptr::null_mut());
    let (a, b) = ([1i64, 1, 1], [2i64, 2, 0]);
    let st = unsafe { npf_lift(f, a.as_ptr(), b.as_ptr(), 3, g_text.as_ptr(), h_text.as_ptr(), 8, 0, &mut g, &mut h) };
    assert_eq!(st, NpfStatus::Precondition);
    let c = [3i64, 3, 3];
    let st = unsafe { npf_lift(f, a.as_ptr(), c.as_ptr(), 3, g_text.as_ptr(), h_text.as_ptr(), 8, 0, &mut g, &mut h) };
    assert_eq!(st, NpfStatus::Geometry);
    assert!(g.is_null() && h.is_null());
    let zero = parse("field F 7\n7*x1");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { npf_edges_json(zero, &mut out) }, NpfStatus::Precondition);
    unsafe {
        npf_series_free(f);
        npf_series_free(zero);
        npf_series_free(ptr::null_mut());
        npf_string_free(ptr::null_mut());
    }
}

/// The generated header is valid C.
#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/npf.h");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
}
