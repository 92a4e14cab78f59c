//! C ABI for the `unproj` library.
//!
//! Every entry point returns an [`UnprojStatus`]. On failure the message
//! is available from [`unproj_last_error`] on the same thread until the
//! next call. Strings handed out by this library are released with
//! [`unproj_string_free`], result handles with [`unproj_result_free`].
//! Panics never cross the boundary; they are reported as
//! `UNPROJ_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use unproj::groebner::{ideal_equal_up_to_sign, ideal_equal_with, GroebnerConfig, Side, DEFAULT_MAX_PAIRS};
use unproj::json::{self, MatrixInput, UnprojectInput, VerifyInput};
use unproj::linalg::{pfaffian_even, pfaffians_odd};
use unproj::unproj::{unproject, Kind, UnprojectionResult, DEFAULT_TNAME};
use unproj::Error;

/// Status codes. The first four match the exit codes of the `unproj` CLI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnprojStatus {
    Ok = 0,
    VerificationFailed = 1,
    InputError = 2,
    ResourceLimit = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Opaque unprojection result.
pub struct UnprojResult {
    inner: UnprojectionResult,
    ideal: Vec<CString>,
    g: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', "\\0")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(UnprojStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::ResourceLimit { .. } => UnprojStatus::ResourceLimit,
            Error::IdentityFailure(_) => UnprojStatus::VerificationFailed,
            _ => UnprojStatus::InputError,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UnprojStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UnprojStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            UnprojStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(UnprojStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(UnprojStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(UnprojStatus::InputError, format!("{name} is not valid UTF-8")))
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn optional_text<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, name).map(Some)
    }
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "\\0")).expect("no interior NUL").into_raw()
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = owned(s);
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn unproj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn unproj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn unproj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an unprojection ideal from a JSON description (the input
/// format of `unproj unproject`). `kind` and `tname` may be null; `kind`
/// then comes from the input and `tname` from the input or defaults to
/// `T`. On success `*out` owns a new handle.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn unproj_unproject(
    input_json: *const c_char,
    kind: *const c_char,
    tname: *const c_char,
    out: *mut *mut UnprojResult,
) -> UnprojStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let input = text(input_json, "input_json")?;
        let u: UnprojectInput = json::from_str("<input>", input)?;
        let flag = optional_text(kind, "kind")?
            .map(|k| k.parse::<Kind>())
            .transpose()?;
        let kind = u.kind(flag)?;
        let ctx = json::ring(&u.vars, u.order.as_deref(), None)?;
        let data = u.build(&ctx, kind)?;
        let tname = optional_text(tname, "tname")?
            .map(str::to_string)
            .or_else(|| u.tname.clone())
            .unwrap_or_else(|| DEFAULT_TNAME.to_string());
        let r = unproject(&data, &tname)?;
        let strings = |ps: &[unproj::Polynomial]| {
            ps.iter()
                .map(|p| CString::new(p.to_string()).expect("no interior NUL"))
                .collect::<Vec<_>>()
        };
        let handle = UnprojResult {
            ideal: strings(r.ideal.gens()),
            g: strings(&r.g),
            inner: r,
        };
        *out = Box::into_raw(Box::new(handle));
        Ok(())
    })
}

/// Releases a result handle. Null is ignored.
///
/// # Safety
/// `r` is null or a handle from [`unproj_unproject`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn unproj_result_free(r: *mut UnprojResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of ideal generators; 0 for a null handle.
///
/// # Safety
/// `r` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn unproj_result_generator_count(r: *const UnprojResult) -> usize {
    r.as_ref().map_or(0, |r| r.ideal.len())
}

/// Generator `i` as canonical text, or null if out of range. The string
/// is owned by the handle.
///
/// # Safety
/// `r` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn unproj_result_generator(r: *const UnprojResult, i: usize) -> *const c_char {
    r.as_ref()
        .and_then(|r| r.ideal.get(i))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Number of `g` values (the coefficients of the new variable's equations).
///
/// # Safety
/// `r` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn unproj_result_g_count(r: *const UnprojResult) -> usize {
    r.as_ref().map_or(0, |r| r.g.len())
}

/// `g_i` (0-based) as canonical text, or null if out of range. Owned by
/// the handle.
///
/// # Safety
/// `r` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn unproj_result_g(r: *const UnprojResult, i: usize) -> *const c_char {
    r.as_ref().and_then(|r| r.g.get(i)).map_or(ptr::null(), |s| s.as_ptr())
}

/// The result as JSON, as printed by `unproj --json unproject`.
///
/// # Safety
/// `r` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn unproj_result_to_json(
    r: *const UnprojResult,
    show_work: bool,
    out: *mut *mut c_char,
) -> UnprojStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(null)?;
        write_string(out, pretty(&json::unprojection_value(&r.inner, show_work)))
    })
}

/// Pfaffian(s) of a skew matrix given as JSON (`vars`, `size`, `upper`).
/// `*out` receives `{"pfaffian": ...}` for even size and
/// `{"pfaffians": [...]}` for odd size.
///
/// # Safety
/// `input_json` is NUL-terminated; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn unproj_pfaffian_json(input_json: *const c_char, out: *mut *mut c_char) -> UnprojStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let m: MatrixInput = json::from_str("<input>", text(input_json, "input_json")?)?;
        let ctx = json::ring(&m.vars, m.order.as_deref(), None)?;
        let a = m.spec().skew(&ctx, "matrix")?;
        let v = if a.size() % 2 == 0 {
            serde_json::json!({ "pfaffian": pfaffian_even(&a)?.to_string() })
        } else {
            serde_json::json!({ "pfaffians": json::texts(&pfaffians_odd(&a)?) })
        };
        write_string(out, pretty(&v))
    })
}

/// Compares the ideals `left` and `right` of a JSON input (`vars`,
/// `left`, `right`, optional `tvar`). With `allow_sign_flip`, equality
/// after `tvar -> -tvar` on the right is accepted too. `*out` receives a
/// JSON report; the status is `UNPROJ_STATUS_VERIFICATION_FAILED` when the
/// ideals differ. `max_pairs` of 0 means the default ceiling.
///
/// # Safety
/// `input_json` is NUL-terminated; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn unproj_ideal_equal_json(
    input_json: *const c_char,
    allow_sign_flip: bool,
    max_pairs: usize,
    out: *mut *mut c_char,
) -> UnprojStatus {
    let mut equal = true;
    let status = guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let v: VerifyInput = json::from_str("<input>", text(input_json, "input_json")?)?;
        let ctx = json::ring(&v.vars, v.order.as_deref(), None)?;
        let (left, right) = v.equal(&ctx)?;
        let config = GroebnerConfig {
            max_pairs: if max_pairs == 0 { DEFAULT_MAX_PAIRS } else { max_pairs },
        };
        let tvar = v.tvar.clone().unwrap_or_else(|| DEFAULT_TNAME.to_string());
        let cmp = if allow_sign_flip {
            ideal_equal_up_to_sign(&left, &right, &tvar, &config)?
        } else {
            ideal_equal_with(&left, &right, &config)?
        };
        equal = cmp.equal;
        let witness = cmp.witness.as_ref().map(|w| {
            serde_json::json!({
                "side": if w.side == Side::Left { "left" } else { "right" },
                "index": w.index,
                "generator": w.generator.to_string(),
                "normal_form": {
                    "numerator": w.normal_form.numerator().to_string(),
                    "denominator": w.normal_form.denominator().to_string(),
                },
            })
        });
        let report = serde_json::json!({
            "equal": cmp.equal,
            "sign_flipped": cmp.sign_flipped,
            "witness": witness,
        });
        write_string(out, pretty(&report))
    });
    if status == UnprojStatus::Ok && !equal {
        set_last_error("ideals differ");
        return UnprojStatus::VerificationFailed;
    }
    status
}

/// Runs the command-line interface on `argv` (without the program name).
/// Returns the CLI exit code and hands out its standard output and error
/// through `out_stdout` and `out_stderr`, either of which may be null.
/// Returns `UNPROJ_STATUS_NULL_POINTER` or `UNPROJ_STATUS_PANIC` as an
/// exit code if the call itself fails.
///
/// # Safety
/// `argv` holds `argc` NUL-terminated strings; the out pointers are null
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn unproj_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> i32 {
    let mut code = 0;
    let status = guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null());
        }
        let mut args = vec!["unproj".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argv")?.to_string());
        }
        let o = unproj::cli::run(args);
        code = o.code;
        if !out_stdout.is_null() {
            *out_stdout = owned(o.stdout);
        }
        if !out_stderr.is_null() {
            *out_stderr = owned(o.stderr);
        }
        Ok(())
    });
    match status {
        UnprojStatus::Ok => code,
        other => other as i32,
    }
}
