//! C ABI over `precu-core`.
//!
//! Documents and monoids cross the boundary as opaque handles; elements
//! cross as UTF-8 strings in the family's textual syntax. Every call
//! returns a [`PrecuStatus`]; on failure [`precu_last_error`] holds the
//! message for the calling thread. Strings returned through out-pointers
//! belong to the caller and are released with [`precu_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use precu_core::commands::{exit_code, json_string, render_json, run_commands, RunOptions};
use precu_core::order::{self, MonoidHandle, Tri};
use precu_core::spec_file::{parse_spec, SpecDocument};
use precu_core::{catalog, Error};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecuStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    UnknownCommand = 5,
    MixedFamily = 6,
    InvalidElement = 7,
    Internal = 8,
}

/// Three-valued answer of an order query.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecuTri {
    False = 0,
    True = 1,
    Unknown = 2,
}

/// A parsed monoid-spec document.
pub struct PrecuDocument {
    doc: SpecDocument,
}

/// A monoid from the catalog or from a document.
pub struct PrecuMonoid {
    handle: MonoidHandle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PrecuStatus {
    match e {
        Error::Parse { .. } => PrecuStatus::ParseError,
        Error::UnknownCommand(_) => PrecuStatus::UnknownCommand,
        Error::MixedFamily { .. } => PrecuStatus::MixedFamily,
        Error::InvalidElement { .. } => PrecuStatus::InvalidElement,
        _ => PrecuStatus::ValidationError,
    }
}

fn fail(status: PrecuStatus, message: impl Into<String>) -> PrecuStatus {
    set_error(message.into());
    status
}

fn from_error(e: Error) -> PrecuStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning panics into `Internal` and clearing the last error on
/// success.
fn guard(f: impl FnOnce() -> PrecuStatus) -> PrecuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(PrecuStatus::Ok) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PrecuStatus::Ok
        }
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(PrecuStatus::Internal, format!("internal error: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, PrecuStatus> {
    if p.is_null() {
        return Err(fail(PrecuStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(PrecuStatus::InvalidUtf8, format!("argument is not UTF-8: {e}")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn precu_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn precu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a monoid-spec document. Parse and validation errors are joined,
/// one per line, into the last error; the status is that of the first.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn precu_document_parse(text: *const c_char, out: *mut *mut PrecuDocument) -> PrecuStatus {
    guard(|| {
        if out.is_null() {
            return fail(PrecuStatus::NullPointer, "null out-pointer");
        }
        *out = ptr::null_mut();
        let text = tri!(read_str(text));
        match parse_spec(text) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(PrecuDocument { doc }));
                PrecuStatus::Ok
            }
            Err(errs) => {
                let status = errs.first().map_or(PrecuStatus::ParseError, status_of);
                let msg: Vec<String> = errs.iter().map(Error::to_string).collect();
                fail(status, msg.join("\n"))
            }
        }
    })
}

/// # Safety
/// `doc` must come from [`precu_document_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn precu_document_free(doc: *mut PrecuDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Runs the document's `[run]` block. Writes the JSON report to `out_json`
/// and the CLI exit code (0 as expected, 1 failed, 2 config, 3 unknown) to
/// `out_exit`. A `budget` of 0 keeps each command's own budget.
///
/// # Safety
/// `doc` must be a live document; `out_json` and `out_exit` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn precu_document_run(
    doc: *const PrecuDocument,
    budget: u64,
    out_json: *mut *mut c_char,
    out_exit: *mut i32,
) -> PrecuStatus {
    guard(|| {
        if doc.is_null() || out_json.is_null() || out_exit.is_null() {
            return fail(PrecuStatus::NullPointer, "null argument");
        }
        *out_json = ptr::null_mut();
        let doc = &(*doc).doc;
        if doc.commands.is_empty() {
            return fail(PrecuStatus::ValidationError, "the document has no [run] commands");
        }
        let opts = RunOptions {
            budget: (budget > 0).then_some(budget),
            parallel: false,
        };
        let outcomes = run_commands(doc, &doc.commands, opts);
        *out_exit = exit_code(&outcomes);
        *out_json = into_c_string(json_string(&render_json(doc, &outcomes, opts)));
        PrecuStatus::Ok
    })
}

/// A catalog family such as `rational`, `T1` or `chain 3`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn precu_monoid_from_family(spec: *const c_char, out: *mut *mut PrecuMonoid) -> PrecuStatus {
    guard(|| {
        if out.is_null() {
            return fail(PrecuStatus::NullPointer, "null out-pointer");
        }
        *out = ptr::null_mut();
        let spec = tri!(read_str(spec));
        match catalog::family(spec) {
            Ok(handle) => {
                *out = Box::into_raw(Box::new(PrecuMonoid { handle }));
                PrecuStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// A monoid declared in a document.
///
/// # Safety
/// `doc` must be a live document, `name` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn precu_monoid_from_document(
    doc: *const PrecuDocument,
    name: *const c_char,
    out: *mut *mut PrecuMonoid,
) -> PrecuStatus {
    guard(|| {
        if doc.is_null() || out.is_null() {
            return fail(PrecuStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let name = tri!(read_str(name));
        match (*doc).doc.monoid(name) {
            Ok(entry) => {
                *out = Box::into_raw(Box::new(PrecuMonoid {
                    handle: entry.handle.clone(),
                }));
                PrecuStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `m` must come from a `precu_monoid_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn precu_monoid_free(m: *mut PrecuMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

type Query = fn(&dyn order::Monoid, &precu_core::Element, &precu_core::Element, u64) -> precu_core::Result<order::Verdict>;

unsafe fn relation(
    m: *const PrecuMonoid,
    x: *const c_char,
    y: *const c_char,
    budget: u64,
    out: *mut PrecuTri,
    query: Query,
) -> PrecuStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return fail(PrecuStatus::NullPointer, "null argument");
        }
        let h = &(*m).handle;
        let (xs, ys) = (tri!(read_str(x)), tri!(read_str(y)));
        let parsed = h.parse_element(xs).and_then(|a| Ok((a, h.parse_element(ys)?)));
        let (a, b) = match parsed {
            Ok(p) => p,
            Err(e) => return from_error(e),
        };
        match query(h.as_ref(), &a, &b, budget) {
            Ok(v) => {
                *out = match v.tri {
                    Tri::True => PrecuTri::True,
                    Tri::False => PrecuTri::False,
                    Tri::Unknown => PrecuTri::Unknown,
                };
                PrecuStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// `x ≤ y`.
///
/// # Safety
/// `m` must be a live monoid, `x` and `y` NUL-terminated strings and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn precu_leq(
    m: *const PrecuMonoid,
    x: *const c_char,
    y: *const c_char,
    budget: u64,
    out: *mut PrecuTri,
) -> PrecuStatus {
    relation(m, x, y, budget, out, order::leq)
}

/// `x ≪ y`.
///
/// # Safety
/// As for [`precu_leq`].
#[no_mangle]
pub unsafe extern "C" fn precu_way_below(
    m: *const PrecuMonoid,
    x: *const c_char,
    y: *const c_char,
    budget: u64,
    out: *mut PrecuTri,
) -> PrecuStatus {
    relation(m, x, y, budget, out, order::way_below)
}

/// `x + y`, written back in the family's syntax.
///
/// # Safety
/// `m` must be a live monoid, `x` and `y` NUL-terminated strings and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn precu_add(
    m: *const PrecuMonoid,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> PrecuStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return fail(PrecuStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let h = &(*m).handle;
        let (xs, ys) = (tri!(read_str(x)), tri!(read_str(y)));
        let sum = h
            .parse_element(xs)
            .and_then(|a| Ok((a, h.parse_element(ys)?)))
            .and_then(|(a, b)| order::add(h.as_ref(), &a, &b));
        match sum {
            Ok(s) => {
                *out = into_c_string(s.to_string());
                PrecuStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn precu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
