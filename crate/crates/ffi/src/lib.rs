//! C ABI for the hgauss engine.
//!
//! Every entry point returns an [`HgStatus`]. On failure the message is kept per
//! thread and can be read with [`hg_last_error`]. Strings handed out through an
//! `out` pointer are owned by the caller and must be released with
//! [`hg_string_free`]; workspaces with [`hg_workspace_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hgauss::cli::{self, dsl, Workspace};
use hgauss::Error;
use libc::{c_char, c_int, size_t};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Usage = 3,
    InvalidInput = 4,
    UnknownGenerator = 5,
    UnknownReference = 6,
    UnknownCatalogue = 7,
    ParameterRange = 8,
    Unsupported = 9,
    WrongPresentation = 10,
    Parse = 11,
    CapExceeded = 12,
    DegreeOverflow = 13,
    Panic = 14,
}

impl From<&Error> for HgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidInput(_) => HgStatus::InvalidInput,
            Error::UnknownGenerator(_) => HgStatus::UnknownGenerator,
            Error::UnknownReference(_) => HgStatus::UnknownReference,
            Error::UnknownCatalogue(_) => HgStatus::UnknownCatalogue,
            Error::ParameterRange(_) => HgStatus::ParameterRange,
            Error::Unsupported(_) => HgStatus::Unsupported,
            Error::WrongPresentation(_) => HgStatus::WrongPresentation,
            Error::CapExceeded { .. } => HgStatus::CapExceeded,
            Error::DegreeOverflow { .. } => HgStatus::DegreeOverflow,
            Error::Parse { .. } => HgStatus::Parse,
        }
    }
}

/// Opaque handle to a parsed `.hga` workspace.
pub struct HgWorkspace {
    inner: Workspace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(HgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(HgStatus::from(&e), e.to_string())
    }
}

fn boundary(f: impl FnOnce() -> Result<(), Failure>) -> HgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            HgStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(HgStatus::NullArgument, format!("`{what}` is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(HgStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(HgStatus::InvalidInput, "result contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_out(out: *mut *mut c_char) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(HgStatus::NullArgument, "`out` is null".into()));
    }
    unsafe { *out = ptr::null_mut() };
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn hg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// CLI exit code that corresponds to `status`: 0, 1 or 2.
#[no_mangle]
pub extern "C" fn hg_exit_code(status: HgStatus) -> c_int {
    match status {
        HgStatus::Ok => 0,
        HgStatus::CapExceeded | HgStatus::DegreeOverflow => 2,
        _ => 1,
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// An empty workspace. Never null.
#[no_mangle]
pub extern "C" fn hg_workspace_new() -> *mut HgWorkspace {
    Box::into_raw(Box::new(HgWorkspace { inner: Workspace::new() }))
}

/// Releases a workspace. Null is ignored.
///
/// # Safety
/// `ws` must come from [`hg_workspace_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hg_workspace_free(ws: *mut HgWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Adds the items of `src` to `ws`. On failure `ws` is left unchanged.
///
/// # Safety
/// `ws` must be a live workspace and `src` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hg_workspace_load(ws: *mut HgWorkspace, src: *const c_char) -> HgStatus {
    boundary(|| {
        let ws = ws.as_mut().ok_or(Failure(HgStatus::NullArgument, "`ws` is null".into()))?;
        let src = str_arg(src, "src")?;
        let mut next = ws.inner.clone();
        next.load(src)?;
        ws.inner = next;
        Ok(())
    })
}

/// Canonical text of `ws`; parsing it again gives an equal workspace.
///
/// # Safety
/// `ws` must be a live workspace and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_workspace_render(ws: *const HgWorkspace, out: *mut *mut c_char) -> HgStatus {
    boundary(|| {
        check_out(out)?;
        let ws = ws.as_ref().ok_or(Failure(HgStatus::NullArgument, "`ws` is null".into()))?;
        put_string(out, ws.inner.render())
    })
}

/// Runs one CLI command, for example `{"solve", "--algebra", "su_q2:1/2"}`, and
/// writes the JSON report to `out`. The program name is not part of `argv`.
/// `ws` may be null; `--file` arguments are loaded on top of it.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `ws` is null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_run(
    ws: *const HgWorkspace,
    argv: *const *const c_char,
    argc: size_t,
    out: *mut *mut c_char,
) -> HgStatus {
    boundary(|| {
        check_out(out)?;
        if argv.is_null() && argc > 0 {
            return Err(Failure(HgStatus::NullArgument, "`argv` is null".into()));
        }
        let mut args = vec!["hgauss".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argv")?.to_string());
        }
        let cli = cli::parse_args(&args).map_err(|e| Failure(HgStatus::Usage, e))?;
        let mut inner = ws.as_ref().map(|w| w.inner.clone()).unwrap_or_default();
        let mut files = Vec::new();
        for path in &cli.file {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            inner.load(&src)?;
            files.push(path.display().to_string());
        }
        let report = cli::run_in(inner, &files, &cli.command)?;
        put_string(out, report.to_json())
    })
}

/// Evaluates the Gaussian functional `functional` on `poly` with the Wick formula
/// and writes the exact value, such as `(1/2 + 3/4i)`, to `out`.
///
/// # Safety
/// `ws` is null or live; string arguments NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_wick_eval(
    ws: *const HgWorkspace,
    functional: *const c_char,
    poly: *const c_char,
    out: *mut *mut c_char,
) -> HgStatus {
    boundary(|| {
        check_out(out)?;
        let name = str_arg(functional, "functional")?;
        let poly = str_arg(poly, "poly")?;
        let empty = Workspace::new();
        let inner = ws.as_ref().map_or(&empty, |w| &w.inner);
        let datum = dsl::resolve_functional(inner, name)?;
        let x = dsl::parse_poly_in(&datum.presentation, poly)?;
        put_string(out, datum.wick_eval(&x)?.to_string())
    })
}
