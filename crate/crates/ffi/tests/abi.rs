use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use densecode_ffi::*;

fn state(json: &str) -> *mut DcState {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { dc_state_from_json(c.as_ptr(), 1e-9, &mut out) },
        DcStatus::Ok
    );
    out
}

fn layout(json: &str) -> *mut DcLayout {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { dc_layout_from_json(c.as_ptr(), &mut out) },
        DcStatus::Ok
    );
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dc_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn singlet_capacity() {
    let s = state(r#"{"constructor": "singlet"}"#);
    let l = layout(r#"{"senders": ["A"], "receivers": ["B"]}"#);
    let (mut cap, mut raw) = (0.0, 0.0);
    unsafe {
        assert_eq!(dc_capacity(s, l, &mut cap, &mut raw), DcStatus::Ok);
        assert_eq!(dc_capacity(s, l, &mut cap, ptr::null_mut()), DcStatus::Ok);
        let mut dim = 0;
        assert_eq!(dc_state_dim(s, &mut dim), DcStatus::Ok);
        assert_eq!(dim, 4);
        dc_state_free(s);
        dc_layout_free(l);
    }
    assert!((cap - 2.0).abs() < 1e-9);
    assert!((raw - 1.0).abs() < 1e-9);
    assert_eq!(last_error(), "");
}

#[test]
fn ghz_bound_and_shell() {
    let mut s = ptr::null_mut();
    let mut l = ptr::null_mut();
    let mut bound = 0.0;
    let mut shell = DcShell::SeparableOrPptBound;
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(dc_state_ghz(4, &mut s), DcStatus::Ok);
        assert_eq!(dc_layout_ghz(4, &mut l), DcStatus::Ok);
        assert_eq!(dc_locc_upper_bound(s, l, &mut bound), DcStatus::Ok);
        assert_eq!(
            dc_classify(s, l, 1e-9, false, &mut shell, &mut json),
            DcStatus::Ok
        );
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        dc_string_free(json);
        dc_state_free(s);
        dc_layout_free(l);
        assert!(text.contains("\"shell\":\"LOCC-DC\""));
    }
    assert!((bound - 3.0).abs() < 1e-9);
    assert_eq!(shell, DcShell::LoccDc);
}

#[test]
fn lo_capacity_of_two_singlets() {
    let s = state(
        r#"{"constructor": "tensor", "params": {"states": [
            {"constructor": "singlet", "labels": ["A1", "B1"]},
            {"constructor": "singlet", "labels": ["A2", "B2"]}]},
            "order": ["A1", "A2", "B1", "B2"]}"#,
    );
    let l = layout(
        r#"{"senders": ["A1", "A2"], "receivers": ["B1", "B2"], "routing": {"A1": "B1", "A2": "B2"}}"#,
    );
    let mut lo = 0.0;
    let mut shell = DcShell::SeparableOrPptBound;
    unsafe {
        assert_eq!(dc_lo_capacity(s, l, &mut lo), DcStatus::Ok);
        assert_eq!(
            dc_classify(s, l, 1e-9, true, &mut shell, ptr::null_mut()),
            DcStatus::Ok
        );
        dc_state_free(s);
        dc_layout_free(l);
    }
    assert!((lo - 4.0).abs() < 1e-9);
    assert_eq!(shell, DcShell::LoDc);
}

#[test]
fn error_codes() {
    let mut s = ptr::null_mut();
    let mut x = 0.0;
    unsafe {
        assert_eq!(dc_state_werner(2.0, &mut s), DcStatus::InvalidInput);
        assert!(s.is_null());
        assert!(!last_error().is_empty());

        let bad = CString::new("{not json").unwrap();
        assert_eq!(
            dc_state_from_json(bad.as_ptr(), 1e-9, &mut s),
            DcStatus::InvalidInput
        );
        assert!(last_error().starts_with("state spec"));

        let missing = CString::new(r#"{"constructor": "werner", "params": {}}"#).unwrap();
        assert_eq!(
            dc_state_from_json(missing.as_ptr(), 1e-9, &mut s),
            DcStatus::InvalidInput
        );
        assert_eq!(last_error(), "params.p: missing");

        assert_eq!(
            dc_state_from_json(ptr::null(), 1e-9, &mut s),
            DcStatus::NullPointer
        );
        assert_eq!(
            dc_capacity(ptr::null(), ptr::null(), &mut x, ptr::null_mut()),
            DcStatus::NullPointer
        );
        assert_eq!(dc_werner_threshold(ptr::null_mut()), DcStatus::NullPointer);

        let invalid = [0xffu8, 0];
        assert_eq!(
            dc_layout_from_json(invalid.as_ptr().cast(), &mut ptr::null_mut()),
            DcStatus::InvalidUtf8
        );

        // mismatched layout is an input error
        let w = state(r#"{"constructor": "werner", "params": {"p": 0.5}}"#);
        let l = layout(r#"{"senders": ["A1"], "receivers": ["B1"]}"#);
        assert_eq!(
            dc_capacity(w, l, &mut x, ptr::null_mut()),
            DcStatus::InvalidInput
        );
        dc_state_free(w);
        dc_layout_free(l);

        dc_state_free(ptr::null_mut());
        dc_layout_free(ptr::null_mut());
        dc_string_free(ptr::null_mut());
    }
}

#[test]
fn werner_threshold() {
    let mut root = 0.0;
    assert_eq!(unsafe { dc_werner_threshold(&mut root) }, DcStatus::Ok);
    assert!(root > 0.74755 && root < 0.74765);
}

#[test]
fn header_declares_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/densecode.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in [
        "dc_last_error",
        "dc_state_from_json",
        "dc_state_free",
        "dc_layout_from_json",
        "dc_capacity",
        "dc_locc_upper_bound",
        "dc_classify",
        "dc_werner_threshold",
        "dc_string_free",
        "DC_STATUS_NUMERICAL",
        "DC_SHELL_LOCC_DC",
        "typedef struct DcState DcState;",
    ] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    // syntax-check with a system C compiler when one is installed
    if let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header)
        .output()
    {
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn c_program_links_and_runs() {
    let Ok(exe) = std::env::current_exe() else {
        return;
    };
    let Some(lib_dir) = exe.parent().and_then(Path::parent) else {
        return;
    };
    if !lib_dir.join("libdensecode_ffi.so").exists() {
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let bin = tempfile::tempdir().unwrap();
    let prog = bin.path().join("capacity");
    let Ok(status) = Command::new("cc")
        .arg(manifest.join("examples/capacity.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(lib_dir)
        .arg("-ldensecode_ffi")
        .arg("-o")
        .arg(&prog)
        .status()
    else {
        return;
    };
    assert!(status.success());
    let out = Command::new(&prog)
        .env("LD_LIBRARY_PATH", lib_dir)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.starts_with("capacity 3.000000 bound 3.000000 shell 4"),
        "{stdout}"
    );
    assert!(stdout.contains("error: "));
}
