use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use unproj_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    unproj_string_free(p);
    s
}

fn last_error() -> Option<String> {
    let p = unproj_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

const ORIGINAL_TOM: &str = r#"{
  "kind": "tom",
  "vars": ["x1", "x2", "x3", "x4", "z1", "z2", "z3", "z4"],
  "x": ["x1", "x2", "x3", "x4"],
  "z": ["z1", "z2", "z3", "z4"],
  "coeffs": {"a24_1": "1", "a25_2": "1", "a34_3": "1", "a35_4": "1"}
}"#;

#[test]
fn unproject_original_tom() {
    let input = c(ORIGINAL_TOM);
    let mut r = ptr::null_mut();
    let status = unsafe { unproj_unproject(input.as_ptr(), ptr::null(), ptr::null(), &mut r) };
    assert_eq!(status, UnprojStatus::Ok);
    unsafe {
        assert_eq!(unproj_result_generator_count(r), 9);
        assert_eq!(unproj_result_g_count(r), 4);
        let g: Vec<&str> = (0..4)
            .map(|i| CStr::from_ptr(unproj_result_g(r, i)).to_str().unwrap())
            .collect();
        assert_eq!(g, ["x1*x3", "x1*x4", "x2*x3", "x2*x4"]);
        assert_eq!(CStr::from_ptr(unproj_result_generator(r, 8)).to_str().unwrap(), "-x2*x4 + z4*T");
        assert!(unproj_result_generator(r, 9).is_null());

        let mut json = ptr::null_mut();
        assert_eq!(unproj_result_to_json(r, false, &mut json), UnprojStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["kind"], "tom");
        assert_eq!(v["ideal"].as_array().unwrap().len(), 9);
        unproj_result_free(r);
    }
}

#[test]
fn kind_and_tname_overrides() {
    let input = c(ORIGINAL_TOM);
    let (kind, tname) = (c("jerry"), c("U"));
    let mut r = ptr::null_mut();
    let status = unsafe { unproj_unproject(input.as_ptr(), kind.as_ptr(), ptr::null(), &mut r) };
    assert_eq!(status, UnprojStatus::InputError);
    assert!(r.is_null());
    assert!(last_error().unwrap().contains("kind"));

    let status = unsafe { unproj_unproject(input.as_ptr(), ptr::null(), tname.as_ptr(), &mut r) };
    assert_eq!(status, UnprojStatus::Ok);
    assert!(last_error().is_none());
    unsafe {
        assert_eq!(CStr::from_ptr(unproj_result_generator(r, 5)).to_str().unwrap(), "-x1*x3 + z1*U");
        unproj_result_free(r);
    }
}

#[test]
fn errors_and_null_pointers() {
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { unproj_unproject(ptr::null(), ptr::null(), ptr::null(), &mut r) },
        UnprojStatus::NullPointer
    );
    let bad = c(r#"{"kind": "tom", "vars": ["x"], "x": ["x", "x", "x", "y"], "z": ["x", "x", "x", "x"]}"#);
    assert_eq!(
        unsafe { unproj_unproject(bad.as_ptr(), ptr::null(), ptr::null(), &mut r) },
        UnprojStatus::InputError
    );
    assert!(last_error().unwrap().contains("x[3]"), "{:?}", last_error());
    assert_eq!(
        unsafe { unproj_unproject(bad.as_ptr(), ptr::null(), ptr::null(), ptr::null_mut()) },
        UnprojStatus::NullPointer
    );
    unsafe {
        unproj_result_free(ptr::null_mut());
        unproj_string_free(ptr::null_mut());
        assert_eq!(unproj_result_generator_count(ptr::null()), 0);
    }
}

#[test]
fn pfaffians() {
    let mut out = ptr::null_mut();
    let even = c(r#"{"vars": ["a"], "size": 2, "upper": ["a"]}"#);
    assert_eq!(unsafe { unproj_pfaffian_json(even.as_ptr(), &mut out) }, UnprojStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["pfaffian"], "a");

    let odd = c(r#"{"vars": ["x1", "x2", "x3", "x4", "z1", "z2", "z3", "z4"], "size": 5,
                    "upper": ["x1", "x2", "x3", "x4", "0", "z1", "z2", "z3", "z4", "0"]}"#);
    assert_eq!(unsafe { unproj_pfaffian_json(odd.as_ptr(), &mut out) }, UnprojStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["pfaffians"][0], "z2*z3 - z1*z4");
}

#[test]
fn ideal_equality() {
    let input = c(r#"{"vars": ["x", "T"], "left": ["T*x - x^2"], "right": ["T*x + x^2"], "tvar": "T"}"#);
    let mut out = ptr::null_mut();
    let status = unsafe { unproj_ideal_equal_json(input.as_ptr(), false, 0, &mut out) };
    assert_eq!(status, UnprojStatus::VerificationFailed);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["equal"], false);
    assert_eq!(v["witness"]["side"], "left");

    let status = unsafe { unproj_ideal_equal_json(input.as_ptr(), true, 0, &mut out) };
    assert_eq!(status, UnprojStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!((v["equal"].clone(), v["sign_flipped"].clone()), (true.into(), true.into()));

    let hard = c(r#"{"vars": ["x", "y", "z"], "left": ["x"], "right": ["x^3 - y*z", "y^3 - x*z", "z^3 - x*y", "x*y*z - 1"]}"#);
    let status = unsafe { unproj_ideal_equal_json(hard.as_ptr(), false, 2, &mut out) };
    assert_eq!(status, UnprojStatus::ResourceLimit);
}

#[test]
fn cli_entry_point() {
    let args = [c("pfaffian"), c("--input"), c(r#"{"vars": ["a"], "size": 2, "upper": ["a"]}"#)];
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut err) = (ptr::null_mut(), ptr::null_mut());
    let code = unsafe { unproj_cli_run(argv.len(), argv.as_ptr(), &mut out, &mut err) };
    assert_eq!(code, 0);
    assert_eq!(unsafe { take(out) }, "a\n");
    assert_eq!(unsafe { take(err) }, "");

    let args = [c("det")];
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let code = unsafe { unproj_cli_run(argv.len(), argv.as_ptr(), ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(code, 2);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(unproj_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles and runs the C smoke test against the static library when a
/// C compiler is available.
#[test]
fn c_program_links_against_header() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // target/<profile>/deps/ffi-xxxx -> target/<profile>
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libunproj_ffi.a");
    if !lib.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = std::env::temp_dir().join(format!("unproj_smoke_{}", std::process::id()));
    let status = std::process::Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = std::process::Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "smoke test exited with {:?}", run.status);
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
