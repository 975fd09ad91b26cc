//! C interface to `npf`.
//!
//! Series are opaque `NpfSeries` handles; strings returned through out
//! parameters are owned by the caller and released with `npf_string_free`.
//! Every function returns an `NpfStatus`; on failure the message is
//! available from `npf_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use npf::geometry::Polyhedron;
use npf::lifting::{lift, LiftMode, LiftRequest};
use npf::screen::reducibility_witness;
use npf::series::SeriesFile;
use npf::{Error, Exponent};

/// Result codes; the nonzero values mirror the CLI exit codes where they
/// overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NpfStatus {
    Ok = 0,
    Internal = 1,
    Precondition = 2,
    Parse = 3,
    Geometry = 4,
    NullPointer = 5,
    Utf8 = 6,
}

/// A parsed series with its variable names and field.
pub struct NpfSeries {
    file: SeriesFile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NpfStatus {
    match e.exit_code() {
        2 => NpfStatus::Precondition,
        3 => NpfStatus::Parse,
        4 => NpfStatus::Geometry,
        _ => NpfStatus::Internal,
    }
}

struct Fail(NpfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(NpfStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, recording any failure (including a panic) as the last
/// error.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> NpfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            NpfStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            NpfStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(NpfStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn series_arg<'a>(p: *const NpfSeries, what: &str) -> Result<&'a NpfSeries, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(NpfStatus::Internal, "output contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_series(out: *mut *mut NpfSeries, file: SeriesFile) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(NpfSeries { file }));
    Ok(())
}

/// Parses the text (or JSON) series format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn npf_series_parse(text: *const c_char, out: *mut *mut NpfSeries) -> NpfStatus {
    guard(|| {
        let t = str_arg(text, "text")?;
        put_series(out, SeriesFile::parse(t)?)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn npf_series_free(s: *mut NpfSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Canonical text form, including the header lines.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn npf_series_to_string(s: *const NpfSeries, out: *mut *mut c_char) -> NpfStatus {
    guard(|| {
        let s = series_arg(s, "series")?;
        put_string(out, s.file.to_text())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn npf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Product `a * b`, truncated at total degree `trunc` when `trunc >= 0`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn npf_series_multiply(
    a: *const NpfSeries,
    b: *const NpfSeries,
    trunc: i64,
    out: *mut *mut NpfSeries,
) -> NpfStatus {
    guard(|| {
        let (a, b) = (series_arg(a, "a")?, series_arg(b, "b")?);
        let t = u32::try_from(trunc).ok();
        let p = a.file.series.multiply(&b.file.series, t)?;
        put_series(out, SeriesFile::new(p, Some(a.file.vars.clone())))
    })
}

/// Compact edges of the Newton polyhedron as JSON.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn npf_edges_json(s: *const NpfSeries, out: *mut *mut c_char) -> NpfStatus {
    guard(|| {
        let s = series_arg(s, "series")?;
        let p = Polyhedron::new(&s.file.series)?;
        let j = serde_json::json!({
            "schema": "npf/1",
            "vertices": p.vertices(),
            "compact_edges": p.compact_edges(),
        });
        put_string(out, j.to_string())
    })
}

/// Lifts the split `g_text || h_text` of `f` along the edge `[a, b]`
/// (`n` coordinates each) to total degree `trunc`. `monic != 0` selects
/// the monic lift.
///
/// # Safety
/// `a`, `b` must point to `n` readable values; strings must be
/// nul-terminated; `out_g`, `out_h` must be writable.
#[no_mangle]
pub unsafe extern "C" fn npf_lift(
    f: *const NpfSeries,
    a: *const i64,
    b: *const i64,
    n: usize,
    g_text: *const c_char,
    h_text: *const c_char,
    trunc: u32,
    monic: i32,
    out_g: *mut *mut NpfSeries,
    out_h: *mut *mut NpfSeries,
) -> NpfStatus {
    guard(|| {
        let f = series_arg(f, "f")?;
        if a.is_null() || b.is_null() {
            return Err(null("edge endpoint"));
        }
        if out_g.is_null() || out_h.is_null() {
            return Err(null("output pointer"));
        }
        let ea = Exponent(std::slice::from_raw_parts(a, n).to_vec());
        let eb = Exponent(std::slice::from_raw_parts(b, n).to_vec());
        let g = f.file.parse_in_ring(str_arg(g_text, "G")?)?;
        let h = f.file.parse_in_ring(str_arg(h_text, "H")?)?;
        let mode = if monic != 0 { LiftMode::Monic } else { LiftMode::General };
        let req = LiftRequest::new(f.file.series.clone(), &ea, &eb, g, h, trunc, mode)?;
        let res = lift(&req)?;
        put_series(out_g, SeriesFile::new(res.g, Some(f.file.vars.clone())))?;
        put_series(out_h, SeriesFile::new(res.h, Some(f.file.vars.clone())))
    })
}

/// Screening verdict as JSON.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn npf_screen_json(s: *const NpfSeries, trunc: u32, out: *mut *mut c_char) -> NpfStatus {
    guard(|| {
        let s = series_arg(s, "series")?;
        let v = reducibility_witness(&s.file.series, trunc)?;
        put_string(out, v.to_json().to_string())
    })
}

/// Message of the last failure on this thread (empty after a success).
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn npf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
