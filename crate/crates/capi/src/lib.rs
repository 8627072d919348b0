//! C ABI for the Green function engine: an opaque engine handle, table and
//! verification entry points returning malloc'd strings, and integer error
//! codes (0 ok, 1 validation failure, 2 usage error, 3 data error).
//!
//! Every returned string must be released with `greenfn_string_free`;
//! the engine handle with `greenfn_engine_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use greenfn::cli::{cmd_green, cmd_twoparam, cmd_verify, exit_code, Format, Pipeline};
use greenfn::groupdata::{DataSource, Twist};
use greenfn::symring::Residue;

pub const GREENFN_OK: i32 = 0;
pub const GREENFN_VALIDATION_ERROR: i32 = 1;
pub const GREENFN_USAGE_ERROR: i32 = 2;
pub const GREENFN_DATA_ERROR: i32 = 3;
pub const GREENFN_PANIC: i32 = 4;

/// Opaque engine state: lazily computed tables plus the last error message.
pub struct GreenfnEngine {
    pipeline: Pipeline,
    last_error: Option<CString>,
}

/// Create an engine. `data_dir` may be NULL to use the embedded data files.
///
/// # Safety
/// `data_dir`, when non-NULL, must point to a NUL-terminated string that
/// stays valid for the duration of this call.
#[no_mangle]
pub unsafe extern "C" fn greenfn_engine_new(data_dir: *const c_char) -> *mut GreenfnEngine {
    let src = if data_dir.is_null() {
        DataSource::embedded()
    } else {
        match CStr::from_ptr(data_dir).to_str() {
            Ok(s) => DataSource::from_dir(s),
            Err(_) => return ptr::null_mut(),
        }
    };
    Box::into_raw(Box::new(GreenfnEngine { pipeline: Pipeline::new(src), last_error: None }))
}

/// # Safety
/// `engine` must be a pointer from `greenfn_engine_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn greenfn_engine_free(engine: *mut GreenfnEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// The message of the last failing call, or NULL. Owned by the engine; do
/// not free, and do not use after the next engine call.
///
/// # Safety
/// `engine` must be a valid engine pointer.
#[no_mangle]
pub unsafe extern "C" fn greenfn_last_error(engine: *const GreenfnEngine) -> *const c_char {
    match engine.as_ref().and_then(|e| e.last_error.as_ref()) {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned in an out-parameter of this
/// library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn greenfn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn format_of(code: i32) -> Option<Format> {
    match code {
        0 => Some(Format::Ascii),
        1 => Some(Format::Csv),
        2 => Some(Format::Json),
        _ => None,
    }
}

unsafe fn finish(
    engine: *mut GreenfnEngine,
    out: *mut *mut c_char,
    result: Result<String, greenfn::Error>,
) -> i32 {
    let engine = &mut *engine;
    match result {
        Ok(text) => {
            engine.last_error = None;
            if !out.is_null() {
                let c = CString::new(text).unwrap_or_default();
                *out = c.into_raw();
            }
            GREENFN_OK
        }
        Err(e) => {
            let code = exit_code(&e);
            engine.last_error = CString::new(e.to_string()).ok();
            if !out.is_null() {
                *out = ptr::null_mut();
            }
            code
        }
    }
}

/// Emit a generalized Green function table.
/// `group`: "spin8", "sl2" or "levi124"; `twisted`: 0 split, 1 twisted;
/// `format`: 0 ascii, 1 csv, 2 json.
///
/// # Safety
/// `engine` must be valid; `group` must be NUL-terminated; `out`, when
/// non-NULL, must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn greenfn_green_table(
    engine: *mut GreenfnEngine,
    group: *const c_char,
    twisted: i32,
    format: i32,
    out: *mut *mut c_char,
) -> i32 {
    if engine.is_null() || group.is_null() {
        return GREENFN_USAGE_ERROR;
    }
    let Ok(group) = CStr::from_ptr(group).to_str() else {
        return GREENFN_USAGE_ERROR;
    };
    let Some(format) = format_of(format) else {
        return GREENFN_USAGE_ERROR;
    };
    let twist = if twisted != 0 { Twist::Twisted } else { Twist::Split };
    let pipeline = &(*engine).pipeline;
    let result = catch_unwind(AssertUnwindSafe(|| cmd_green(pipeline, group, twist, format, None)));
    match result {
        Ok(r) => finish(engine, out, r),
        Err(_) => GREENFN_PANIC,
    }
}

/// Emit a 2-parameter Green function table for the Levi on nodes {1,2,4}.
/// `resolve`: 0 keeps a22 symbolic (the published shape), 1 substitutes the
/// resolved signs; `residue`: 0 for both classes, or 1 / 3 with resolve = 1.
///
/// # Safety
/// `engine` must be valid; `out`, when non-NULL, must point to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn greenfn_twoparam_table(
    engine: *mut GreenfnEngine,
    twisted: i32,
    resolve: i32,
    residue: i32,
    format: i32,
    out: *mut *mut c_char,
) -> i32 {
    if engine.is_null() {
        return GREENFN_USAGE_ERROR;
    }
    let Some(format) = format_of(format) else {
        return GREENFN_USAGE_ERROR;
    };
    let res = match residue {
        0 => None,
        1 => Some(Residue::R1),
        3 => Some(Residue::R3),
        _ => return GREENFN_USAGE_ERROR,
    };
    let twist = if twisted != 0 { Twist::Twisted } else { Twist::Split };
    let pipeline = &(*engine).pipeline;
    let result = catch_unwind(AssertUnwindSafe(|| {
        cmd_twoparam(pipeline, twist, resolve != 0, res, format)
    }));
    match result {
        Ok(r) => finish(engine, out, r),
        Err(_) => GREENFN_PANIC,
    }
}

/// Run a verification suite: "orthogonality", "self-induction", "counts" or
/// "signs". The report text is returned even on validation failure.
///
/// # Safety
/// `engine` must be valid; `what` must be NUL-terminated; `out`, when
/// non-NULL, must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn greenfn_verify(
    engine: *mut GreenfnEngine,
    what: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    if engine.is_null() || what.is_null() {
        return GREENFN_USAGE_ERROR;
    }
    let Ok(what) = CStr::from_ptr(what).to_str() else {
        return GREENFN_USAGE_ERROR;
    };
    let pipeline = &(*engine).pipeline;
    let result = catch_unwind(AssertUnwindSafe(|| cmd_verify(pipeline, what)));
    match result {
        Ok(r) => finish(engine, out, r),
        Err(_) => GREENFN_PANIC,
    }
}

/// The resolved sign assignment as a short text line.
///
/// # Safety
/// `engine` must be valid; `out` must point to writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn greenfn_resolved_signs(
    engine: *mut GreenfnEngine,
    out: *mut *mut c_char,
) -> i32 {
    if engine.is_null() || out.is_null() {
        return GREENFN_USAGE_ERROR;
    }
    let pipeline = &(*engine).pipeline;
    let result = catch_unwind(AssertUnwindSafe(|| {
        pipeline.resolved().map(|(_, _, a)| format!("{a}"))
    }));
    match result {
        Ok(r) => finish(engine, out, r),
        Err(_) => GREENFN_PANIC,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn end_to_end_through_the_c_surface() {
        unsafe {
            let engine = greenfn_engine_new(ptr::null());
            assert!(!engine.is_null());
            let mut out: *mut c_char = ptr::null_mut();
            let code = greenfn_twoparam_table(engine, 0, 0, 0, 0, &mut out);
            assert_eq!(code, GREENFN_OK);
            let text = CStr::from_ptr(out).to_str().unwrap().to_string();
            assert!(text.contains("P2P3P4^2P6"));
            greenfn_string_free(out);

            let mut out: *mut c_char = ptr::null_mut();
            let code = greenfn_resolved_signs(engine, &mut out);
            assert_eq!(code, GREENFN_OK);
            let text = CStr::from_ptr(out).to_str().unwrap().to_string();
            assert!(text.contains("a22"));
            greenfn_string_free(out);

            // Usage error paths.
            let code = greenfn_twoparam_table(engine, 0, 0, 2, 0, ptr::null_mut());
            assert_eq!(code, GREENFN_USAGE_ERROR);
            let mut out: *mut c_char = ptr::null_mut();
            let bad = CString::new("nonsense").unwrap();
            let code = greenfn_verify(engine, bad.as_ptr(), &mut out);
            assert_eq!(code, GREENFN_DATA_ERROR);
            assert!(!greenfn_last_error(engine).is_null());

            greenfn_engine_free(engine);
        }
    }
}
