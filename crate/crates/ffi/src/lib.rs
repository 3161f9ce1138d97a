//! C ABI over the `densecode` core.
//!
//! States and layouts are opaque heap handles created by the `dc_state_*` and
//! `dc_layout_*` constructors and released with the matching `_free`. Every fallible call
//! returns a `DcStatus`; on failure `dc_last_error()` describes the cause for
//! the calling thread. Strings returned through out-pointers are owned by the
//! caller and must be released with `dc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use densecode::capacity::{capacity_report, lo_capacity, locc_upper_bound, werner_dc_threshold};
use densecode::cli::{
    cmd_classify, default_ghz_layout, CliError, LayoutSpecDocument, StateSpecDocument,
};
use densecode::criteria::Shell;
use densecode::states::{DenseCodingLayout, MultipartiteState};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Numerical = 4,
    Panic = 5,
}

/// Dense-coding shell, weakest to strongest.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcShell {
    SeparableOrPptBound = 0,
    NptUndetermined = 1,
    Distillable = 2,
    GlobalDc = 3,
    LoccDc = 4,
    LoDc = 5,
}

impl From<Shell> for DcShell {
    fn from(s: Shell) -> Self {
        match s {
            Shell::SeparableOrPptBound => DcShell::SeparableOrPptBound,
            Shell::NptUndetermined => DcShell::NptUndetermined,
            Shell::Distillable => DcShell::Distillable,
            Shell::GlobalDc => DcShell::GlobalDc,
            Shell::LoccDc => DcShell::LoccDc,
            Shell::LoDc => DcShell::LoDc,
        }
    }
}

/// Opaque multipartite density matrix.
pub struct DcState(MultipartiteState);

/// Opaque sender/receiver layout.
pub struct DcLayout(DenseCodingLayout);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: DcStatus, msg: &str) -> DcStatus {
    set_error(msg);
    status
}

fn from_cli(e: CliError) -> DcStatus {
    let status = match e {
        CliError::Input(_) => DcStatus::InvalidInput,
        CliError::Numerical(_) => DcStatus::Numerical,
    };
    fail(status, e.message())
}

fn from_core(e: densecode::error::Error) -> DcStatus {
    from_cli(e.into())
}

/// Runs `f`, mapping panics to `DcStatus::Panic`.
fn guard(f: impl FnOnce() -> DcStatus) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == DcStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(DcStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, DcStatus> {
    if p.is_null() {
        return Err(fail(DcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(DcStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn put<T>(out: *mut T, v: T) -> DcStatus {
    if out.is_null() {
        return fail(DcStatus::NullPointer, "null output pointer");
    }
    *out = v;
    DcStatus::Ok
}

unsafe fn put_box<T>(out: *mut *mut T, v: T) -> DcStatus {
    if out.is_null() {
        return fail(DcStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(v));
    DcStatus::Ok
}

unsafe fn state_ref<'a>(s: *const DcState) -> Result<&'a MultipartiteState, DcStatus> {
    s.as_ref()
        .map(|s| &s.0)
        .ok_or_else(|| fail(DcStatus::NullPointer, "null state handle"))
}

unsafe fn layout_ref<'a>(l: *const DcLayout) -> Result<&'a DenseCodingLayout, DcStatus> {
    l.as_ref()
        .map(|l| &l.0)
        .ok_or_else(|| fail(DcStatus::NullPointer, "null layout handle"))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message describing the last failure on this thread; empty after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a state from a JSON state spec (constructor or explicit form).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_state_from_json(
    json: *const c_char,
    tol: f64,
    out: *mut *mut DcState,
) -> DcStatus {
    guard(|| {
        let text = tri!(read_str(json));
        let doc: StateSpecDocument = tri!(serde_json::from_str(text)
            .map_err(|e| fail(DcStatus::InvalidInput, &format!("state spec: {e}"))));
        let s = tri!(doc.build(tol).map_err(from_cli));
        put_box(out, DcState(s))
    })
}

/// Werner state `p|ψ⁻⟩⟨ψ⁻| + (1−p)I/4` on parties `A`, `B`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_state_werner(p: f64, out: *mut *mut DcState) -> DcStatus {
    guard(|| {
        let s = tri!(densecode::states::werner(p).map_err(from_core));
        put_box(out, DcState(s))
    })
}

/// `n`-qubit GHZ state with default labels.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_state_ghz(n: usize, out: *mut *mut DcState) -> DcStatus {
    guard(|| {
        let s = tri!(densecode::states::ghz(n).map_err(from_core));
        put_box(out, DcState(s))
    })
}

/// Total Hilbert-space dimension of a state.
///
/// # Safety
/// `state` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_state_dim(state: *const DcState, out: *mut usize) -> DcStatus {
    guard(|| put(out, tri!(state_ref(state)).dim()))
}

/// Number of parties of a state.
///
/// # Safety
/// `state` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_state_num_parties(state: *const DcState, out: *mut usize) -> DcStatus {
    guard(|| put(out, tri!(state_ref(state)).num_parties()))
}

/// # Safety
/// `state` must come from a `dc_state_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dc_state_free(state: *mut DcState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Builds a layout from `{"senders": [...], "receivers": [...], "routing": {...}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_layout_from_json(
    json: *const c_char,
    out: *mut *mut DcLayout,
) -> DcStatus {
    guard(|| {
        let text = tri!(read_str(json));
        let doc: LayoutSpecDocument = tri!(serde_json::from_str(text)
            .map_err(|e| fail(DcStatus::InvalidInput, &format!("layout spec: {e}"))));
        let l = tri!(doc.build().map_err(from_cli));
        put_box(out, DcLayout(l))
    })
}

/// Two-receiver layout for the `n`-qubit GHZ labels.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_layout_ghz(n: usize, out: *mut *mut DcLayout) -> DcStatus {
    guard(|| {
        let l = tri!(default_ghz_layout(n).map_err(from_cli));
        put_box(out, DcLayout(l))
    })
}

/// # Safety
/// `layout` must come from a `dc_layout_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dc_layout_free(layout: *mut DcLayout) {
    if !layout.is_null() {
        drop(Box::from_raw(layout));
    }
}

/// Clamped capacity in bits and, if `raw_excess` is non-null, the unclamped
/// excess over the classical baseline.
///
/// # Safety
/// Handles must be live; `capacity` must be writable; `raw_excess` may be null.
#[no_mangle]
pub unsafe extern "C" fn dc_capacity(
    state: *const DcState,
    layout: *const DcLayout,
    capacity: *mut f64,
    raw_excess: *mut f64,
) -> DcStatus {
    guard(|| {
        let r = tri!(
            capacity_report(tri!(state_ref(state)), tri!(layout_ref(layout))).map_err(from_core)
        );
        if !raw_excess.is_null() {
            *raw_excess = r.raw_excess;
        }
        put(capacity, r.capacity)
    })
}

/// Upper bound on the capacity when two receivers decode by LOCC.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_locc_upper_bound(
    state: *const DcState,
    layout: *const DcLayout,
    out: *mut f64,
) -> DcStatus {
    guard(|| {
        let b = tri!(
            locc_upper_bound(tri!(state_ref(state)), tri!(layout_ref(layout))).map_err(from_core)
        );
        put(out, b)
    })
}

/// Capacity when each receiver decodes alone.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_lo_capacity(
    state: *const DcState,
    layout: *const DcLayout,
    out: *mut f64,
) -> DcStatus {
    guard(|| {
        let c =
            tri!(lo_capacity(tri!(state_ref(state)), tri!(layout_ref(layout))).map_err(from_core));
        put(out, c.capacity)
    })
}

/// Classifies a state. `shell` receives the shell; if `report_json` is
/// non-null it receives the full report as JSON (free with `dc_string_free`).
///
/// # Safety
/// Handles must be live; `shell` must be writable; `report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn dc_classify(
    state: *const DcState,
    layout: *const DcLayout,
    tol: f64,
    all_cuts: bool,
    shell: *mut DcShell,
    report_json: *mut *mut c_char,
) -> DcStatus {
    guard(|| {
        let r = tri!(cmd_classify(
            tri!(state_ref(state)),
            tri!(layout_ref(layout)),
            all_cuts,
            tol
        )
        .map_err(from_cli));
        if !report_json.is_null() {
            let text =
                tri!(serde_json::to_string(&r)
                    .map_err(|e| fail(DcStatus::Numerical, &e.to_string())));
            *report_json = CString::new(text).map_or(ptr::null_mut(), CString::into_raw);
        }
        put(shell, r.shell.into())
    })
}

/// Werner parameter above which the state beats classical transmission.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dc_werner_threshold(out: *mut f64) -> DcStatus {
    guard(|| put(out, tri!(werner_dc_threshold().map_err(from_core)).root))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
