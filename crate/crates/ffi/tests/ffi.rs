use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use wchar_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(wchar_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn grading_handle() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(wchar_grading_new(cstr("2,2").as_ptr(), &mut g), WcharStatus::Ok);
        let mut dchi = 0;
        assert_eq!(wchar_grading_dchi(g, &mut dchi), WcharStatus::Ok);
        assert_eq!(dchi, 4);
        let mut json = ptr::null_mut();
        assert_eq!(wchar_grading_json(g, &mut json), WcharStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["d_chi"], 4);
        wchar_string_free(json);
        wchar_grading_free(g);
    }
}

#[test]
fn admissible_handle() {
    let mut set = ptr::null_mut();
    unsafe {
        assert_eq!(wchar_admissible_new(cstr("2,2").as_ptr(), 5, 2, &mut set), WcharStatus::Ok);
        let (mut total, mut mtilde, mut classes) = (0, 0, 0);
        assert_eq!(
            wchar_admissible_counts(set, &mut total, &mut mtilde, ptr::null_mut(), &mut classes),
            WcharStatus::Ok
        );
        assert_eq!((total, mtilde, classes), (32, 8, 2));
        wchar_admissible_free(set);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(wchar_grading_new(ptr::null(), &mut g), WcharStatus::NullArgument);
        assert_eq!(wchar_grading_new(cstr("2").as_ptr(), ptr::null_mut()), WcharStatus::NullArgument);
        assert_eq!(wchar_grading_new(cstr("1").as_ptr(), &mut g), WcharStatus::Precondition);
        assert!(!last_error().is_empty());
        let mut set = ptr::null_mut();
        assert_eq!(wchar_admissible_new(cstr("2").as_ptr(), 4, 2, &mut set), WcharStatus::Precondition);
        assert!(last_error().contains("admissible"));
        assert!(set.is_null());
        let mut needed = 0;
        assert_eq!(
            wchar_exceptional_partition(4, 5, 2, ptr::null_mut(), 0, &mut needed),
            WcharStatus::BufferTooSmall
        );
        assert_eq!(needed, 4);
        let mut ch = ptr::null_mut();
        assert_eq!(
            wchar_character_new(cstr("2").as_ptr(), 4, 3, cstr("1,2").as_ptr(), 4, 2, &mut ch),
            WcharStatus::Precondition
        );
        assert_eq!(wchar_grading_dchi(ptr::null(), &mut needed), WcharStatus::NullArgument);
        wchar_grading_free(ptr::null_mut());
        wchar_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/wchar.h")).unwrap();
    for name in [
        "wchar_grading_new",
        "wchar_admissible_counts",
        "wchar_character_q_series",
        "wchar_exceptional_partition",
        "wchar_last_error",
        "WCHAR_STATUS_BUFFER_TOO_SMALL",
        "typedef struct WcharCharacter WcharCharacter;",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn c_program_links_against_static_library() {
    // target/<profile>/deps/<this test> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libwchar_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("wchar_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is required for this test");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
