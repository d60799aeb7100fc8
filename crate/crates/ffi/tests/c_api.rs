//! The C ABI driven through its exported functions.

use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use precu_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = precu_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn family(spec: &str) -> *mut PrecuMonoid {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { precu_monoid_from_family(c(spec).as_ptr(), &mut m) }, PrecuStatus::Ok);
    assert!(!m.is_null());
    m
}

fn leq(m: *const PrecuMonoid, x: &str, y: &str) -> PrecuTri {
    let mut out = PrecuTri::Unknown;
    assert_eq!(unsafe { precu_leq(m, c(x).as_ptr(), c(y).as_ptr(), 64, &mut out) }, PrecuStatus::Ok);
    out
}

fn way_below(m: *const PrecuMonoid, x: &str, y: &str) -> PrecuTri {
    let mut out = PrecuTri::Unknown;
    assert_eq!(unsafe { precu_way_below(m, c(x).as_ptr(), c(y).as_ptr(), 64, &mut out) }, PrecuStatus::Ok);
    out
}

fn add(m: *const PrecuMonoid, x: &str, y: &str) -> Result<String, PrecuStatus> {
    let mut out: *mut c_char = ptr::null_mut();
    match unsafe { precu_add(m, c(x).as_ptr(), c(y).as_ptr(), &mut out) } {
        PrecuStatus::Ok => {
            let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
            unsafe { precu_string_free(out) };
            Ok(s)
        }
        s => Err(s),
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(precu_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn catalog_queries() {
    let q = family("rational");
    assert_eq!(leq(q, "1/2", "2/3"), PrecuTri::True);
    assert_eq!(leq(q, "2/3", "1/2"), PrecuTri::False);
    assert_eq!(way_below(q, "1", "1"), PrecuTri::False);
    assert_eq!(way_below(q, "0", "0"), PrecuTri::True);
    assert_eq!(add(q, "1/2", "1/3").unwrap(), "5/6");

    let t1 = family("T1");
    assert_eq!(leq(t1, "1'", "1"), PrecuTri::True);
    assert_eq!(leq(t1, "1", "1'"), PrecuTri::False);
    let t2 = family("T2");
    assert_eq!(leq(t2, "1'", "1"), PrecuTri::False);
    let sum = add(t2, "1/2'", "1/4").unwrap();
    assert_eq!(leq(t2, &sum, "3/4'"), PrecuTri::True);
    assert_eq!(leq(t2, "3/4'", &sum), PrecuTri::True);

    let n = family("nat-inf");
    assert_eq!(way_below(n, "∞", "∞"), PrecuTri::False);
    assert_eq!(add(n, "3", "∞").unwrap(), "∞");
    for m in [q, t1, t2, n] {
        unsafe { precu_monoid_free(m) };
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut m = ptr::null_mut();
    let s = unsafe { precu_monoid_from_family(c("no-such-family").as_ptr(), &mut m) };
    assert_eq!(s, PrecuStatus::ValidationError);
    assert!(m.is_null());
    assert!(last_error().contains("no-such-family"));

    let q = family("rational");
    assert!(precu_last_error().is_null());
    assert_eq!(add(q, "1/2", "banana"), Err(PrecuStatus::InvalidElement));
    assert!(last_error().contains("banana"));
    let mut out = PrecuTri::True;
    assert_eq!(unsafe { precu_leq(q, ptr::null(), c("1").as_ptr(), 8, &mut out) }, PrecuStatus::NullPointer);
    let bad = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { precu_leq(q, bad.as_ptr().cast(), c("1").as_ptr(), 8, &mut out) },
        PrecuStatus::InvalidUtf8
    );
    assert_eq!(unsafe { precu_leq(q, c("1").as_ptr(), c("2").as_ptr(), 0, &mut out) }, PrecuStatus::ValidationError);
    assert_eq!(unsafe { precu_leq(ptr::null(), c("1").as_ptr(), c("2").as_ptr(), 8, &mut out) }, PrecuStatus::NullPointer);
    unsafe { precu_monoid_free(q) };
    unsafe { precu_monoid_free(ptr::null_mut()) };
    unsafe { precu_string_free(ptr::null_mut()) };
}

const DOC: &str = "[monoid M]\nelements = 0 a b\nrow = 0 a b\nrow = a a b\nrow = b b b\norder = 0<a a<b\n\n[monoid Q]\nfamily = rational\n\n[run]\nclassify M\ncomplete M\nclassify Q expect=fail\n";

fn parse(text: &str) -> Result<*mut PrecuDocument, PrecuStatus> {
    let mut d = ptr::null_mut();
    match unsafe { precu_document_parse(c(text).as_ptr(), &mut d) } {
        PrecuStatus::Ok => Ok(d),
        s => {
            assert!(d.is_null());
            Err(s)
        }
    }
}

fn run(d: *const PrecuDocument, budget: u64) -> (String, i32) {
    let (mut json, mut exit) = (ptr::null_mut(), -1);
    assert_eq!(unsafe { precu_document_run(d, budget, &mut json, &mut exit) }, PrecuStatus::Ok);
    let s = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    unsafe { precu_string_free(json) };
    (s, exit)
}

#[test]
fn documents_parse_run_and_expose_monoids() {
    let d = parse(DOC).unwrap();
    let (a, exit) = run(d, 0);
    assert_eq!(exit, 0);
    let tree: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(tree.is_object());
    let (b, _) = run(d, 0);
    assert_eq!(a, b);

    let mut m = ptr::null_mut();
    assert_eq!(unsafe { precu_monoid_from_document(d, c("M").as_ptr(), &mut m) }, PrecuStatus::Ok);
    assert_eq!(leq(m, "a", "b"), PrecuTri::True);
    assert_eq!(way_below(m, "b", "b"), PrecuTri::True);
    assert_eq!(add(m, "a", "a").unwrap(), "#1");
    assert_eq!(unsafe { precu_monoid_from_document(d, c("Nope").as_ptr(), &mut m) }, PrecuStatus::ValidationError);
    unsafe { precu_document_free(d) };
}

#[test]
fn document_errors() {
    assert_eq!(parse("# nothing\n"), Err(PrecuStatus::ParseError));
    assert!(last_error().contains("line 1"));
    assert_eq!(parse("[run]\nfrobnicate Q\n"), Err(PrecuStatus::UnknownCommand));
    let broken = "[monoid B]\nelements = 0 a b\nrow = 0 a b\nrow = a b b\nrow = b b 0\n";
    assert_eq!(parse(broken), Err(PrecuStatus::ValidationError));
    assert!(last_error().contains("addition not associative at (a, a, b)"));

    let d = parse("[monoid Q]\nfamily = rational\n").unwrap();
    let (mut json, mut exit) = (ptr::null_mut(), 0);
    assert_eq!(unsafe { precu_document_run(d, 0, &mut json, &mut exit) }, PrecuStatus::ValidationError);
    assert!(json.is_null());
    unsafe { precu_document_free(d) };
}

#[test]
fn header_declares_every_export_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/precu.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "precu_version",
        "precu_last_error",
        "precu_document_parse",
        "precu_document_free",
        "precu_document_run",
        "precu_monoid_from_family",
        "precu_monoid_from_document",
        "precu_monoid_free",
        "precu_leq",
        "precu_way_below",
        "precu_add",
        "precu_string_free",
        "PRECU_STATUS_INTERNAL = 8",
    ] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        "#include \"precu.h\"\nint main(void) { PrecuStatus s = PRECU_STATUS_OK; PrecuTri t = PRECU_TRI_UNKNOWN; return (int)s + (int)t - 2; }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .output()
        .expect("a C compiler");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
