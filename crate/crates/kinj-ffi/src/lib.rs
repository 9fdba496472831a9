//! C ABI over the kinj library.
//!
//! The surface is deliberately narrow: an opaque context owning the algebra
//! and scalar field, status codes for every fallible call, and JSON strings
//! across the boundary (the same documents the `kinj` CLI reads and
//! writes). Strings handed out through out-parameters are owned by the
//! caller and must be released with [`kinj_string_free`]; the pointer from
//! [`kinj_last_error`] stays owned by the context and is valid until the
//! next call on that context.
//!
//! `include/kinj.h` is generated from this file by cbindgen at build time.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use kinj::anmod::{hom_k_dim, AnAlgebra, InjComplex, DEFAULT_MAX_WINDOW};
use kinj::classify::{classify_complex, labels_to_json, realize_label, CanonLabel};
use kinj::exactlin::Field;
use kinj::quiver::BoundQuiver;
use kinj::rep::intervals::decompose_intervals;
use kinj::rep::Rep;

/// Result of every fallible call. Anything other than `Ok` leaves a
/// message readable through `kinj_last_error`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KinjStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    Panicked = 5,
}

/// Opaque handle owning the cyclic algebra, the scalar field, and the last
/// error message. Create with `kinj_context_new`, release with
/// `kinj_context_free`. A context is not thread-safe; share one per thread.
pub struct KinjContext {
    algebra: Arc<AnAlgebra>,
    field: Field,
    last_error: CString,
}

fn sanitized(msg: &str) -> CString {
    CString::new(msg.replace('\0', " ")).unwrap_or_default()
}

type FfiResult = Result<String, (KinjStatus, String)>;

/// Shared prologue/epilogue: null checks, panic containment, error and
/// output plumbing.
unsafe fn with_ctx<F>(ctx: *mut KinjContext, out: *mut *mut c_char, f: F) -> KinjStatus
where
    F: FnOnce(&KinjContext) -> FfiResult,
{
    if ctx.is_null() || out.is_null() {
        return KinjStatus::NullArgument;
    }
    let ctx = &mut *ctx;
    let outcome = catch_unwind(AssertUnwindSafe(|| f(&*ctx)));
    match outcome {
        Ok(Ok(payload)) => {
            *out = sanitized(&payload).into_raw();
            ctx.last_error = CString::default();
            KinjStatus::Ok
        }
        Ok(Err((status, msg))) => {
            ctx.last_error = sanitized(&msg);
            status
        }
        Err(_) => {
            ctx.last_error = sanitized("internal panic");
            KinjStatus::Panicked
        }
    }
}

unsafe fn utf8<'a>(p: *const c_char) -> Result<&'a str, (KinjStatus, String)> {
    if p.is_null() {
        return Err((KinjStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (KinjStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

fn parse_json(s: &str) -> Result<serde_json::Value, (KinjStatus, String)> {
    serde_json::from_str(s).map_err(|e| (KinjStatus::ParseError, e.to_string()))
}

fn load_complex(field: Field, s: &str) -> Result<InjComplex, (KinjStatus, String)> {
    let v = parse_json(s)?;
    InjComplex::from_json(field, &v).map_err(|e| (KinjStatus::ParseError, e.to_string()))
}

/// Create a context for the cyclic algebra on `n` vertices. `field_spec`
/// is `"rational"` or `"fp:<prime>"`; a null pointer selects rationals.
/// Returns null when `n` is zero or the field spec is invalid.
///
/// # Safety
/// `field_spec` must be null or point to a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn kinj_context_new(n: u64, field_spec: *const c_char) -> *mut KinjContext {
    let field = if field_spec.is_null() {
        Field::Rational
    } else {
        let Ok(s) = CStr::from_ptr(field_spec).to_str() else {
            return std::ptr::null_mut();
        };
        let Ok(f) = Field::parse_spec(s) else {
            return std::ptr::null_mut();
        };
        f
    };
    let Ok(algebra) = AnAlgebra::new(n as usize) else {
        return std::ptr::null_mut();
    };
    Box::into_raw(Box::new(KinjContext {
        algebra: Arc::new(algebra),
        field,
        last_error: CString::default(),
    }))
}

/// Release a context. Null is ignored.
///
/// # Safety
/// `ctx` must be null or a pointer returned by `kinj_context_new` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn kinj_context_free(ctx: *mut KinjContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Message for the most recent failure on this context; empty when the
/// last call succeeded. The pointer is owned by the context and is valid
/// until the next call on it.
///
/// # Safety
/// `ctx` must be null or a live pointer from `kinj_context_new`.
#[no_mangle]
pub unsafe extern "C" fn kinj_last_error(ctx: *const KinjContext) -> *const c_char {
    if ctx.is_null() {
        return std::ptr::null();
    }
    (*ctx).last_error.as_ptr()
}

/// Classify a complex given as JSON. On success writes a string like
/// `{"labels":[{"start":0,"end":1,"anchor":1,"mult":1}]}` to `out_json`.
/// The complex carries its own vertex count; the context supplies the
/// scalar field.
///
/// # Safety
/// `ctx` must be live, `complex_json` NUL-terminated, and `out_json` must
/// point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn kinj_classify_json(
    ctx: *mut KinjContext,
    complex_json: *const c_char,
    out_json: *mut *mut c_char,
) -> KinjStatus {
    with_ctx(ctx, out_json, |c| {
        let s = utf8(complex_json)?;
        let x = load_complex(c.field, s)?;
        let labels =
            classify_complex(&x).map_err(|e| (KinjStatus::DomainError, e.to_string()))?;
        Ok(labels_to_json(&labels).to_string())
    })
}

/// Stable dimension of the homotopy-category hom between two complexes
/// given as JSON. `max_window` caps the stabilization search; any value
/// below 1 selects the default (64). Writes either
/// `{"dim":...,"stableAt":...}` or
/// `{"unstable":true,"dimAtCutoff":...,"windowWidth":...}`.
///
/// # Safety
/// `ctx` must be live, both JSON arguments NUL-terminated, and `out_json`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn kinj_hom_dim_json(
    ctx: *mut KinjContext,
    x_json: *const c_char,
    y_json: *const c_char,
    max_window: i64,
    out_json: *mut *mut c_char,
) -> KinjStatus {
    with_ctx(ctx, out_json, |c| {
        let x = load_complex(c.field, utf8(x_json)?)?;
        let y = load_complex(c.field, utf8(y_json)?)?;
        let cap = if max_window < 1 {
            DEFAULT_MAX_WINDOW
        } else {
            max_window
        };
        let out = hom_k_dim(&x, &y, cap).map_err(|e| (KinjStatus::DomainError, e.to_string()))?;
        Ok(out.to_json().to_string())
    })
}

/// Realize a label such as `"0:1:1"` (endpoints may be `-inf`/`+inf`) over
/// the window `[window_lo, window_hi]` and write the complex as JSON. The
/// label is interpreted over the context's algebra.
///
/// # Safety
/// `ctx` must be live, `label` NUL-terminated, and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn kinj_realize_label_json(
    ctx: *mut KinjContext,
    label: *const c_char,
    window_lo: i64,
    window_hi: i64,
    out_json: *mut *mut c_char,
) -> KinjStatus {
    with_ctx(ctx, out_json, |c| {
        let s = utf8(label)?;
        let l = CanonLabel::parse(s, c.algebra.n())
            .map_err(|e| (KinjStatus::ParseError, e.to_string()))?;
        let x = realize_label(c.algebra.clone(), c.field, &l, (window_lo, window_hi))
            .map_err(|e| (KinjStatus::DomainError, e.to_string()))?;
        Ok(x.to_json().to_string())
    })
}

/// Decompose a path-quiver representation into intervals. The document
/// must carry `"quiver"`, `"dims"`, and `"maps"` keys in the CLI's file
/// format; the output matches the CLI's `decompose-rep` subcommand.
///
/// # Safety
/// `ctx` must be live, `rep_json` NUL-terminated, and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn kinj_decompose_rep_json(
    ctx: *mut KinjContext,
    rep_json: *const c_char,
    out_json: *mut *mut c_char,
) -> KinjStatus {
    with_ctx(ctx, out_json, |c| {
        let v = parse_json(utf8(rep_json)?)?;
        let qv = v
            .get("quiver")
            .ok_or((KinjStatus::ParseError, "missing \"quiver\" field".to_string()))?;
        let quiver =
            BoundQuiver::from_json(qv).map_err(|e| (KinjStatus::ParseError, e.to_string()))?;
        let rep = Rep::from_json(Arc::new(quiver), c.field, &v)
            .map_err(|e| (KinjStatus::ParseError, e.to_string()))?;
        let dec =
            decompose_intervals(&rep).map_err(|e| (KinjStatus::DomainError, e.to_string()))?;
        let intervals = dec.labeled_intervals().unwrap_or_else(|| dec.intervals.clone());
        let intervals: Vec<serde_json::Value> = intervals
            .iter()
            .map(|iv| {
                serde_json::json!({
                    "component": iv.component,
                    "a": iv.a,
                    "b": iv.b,
                    "mult": iv.mult,
                    "clippedLeft": iv.clipped_left,
                    "clippedRight": iv.clipped_right,
                })
            })
            .collect();
        Ok(serde_json::json!({ "intervals": intervals }).to_string())
    })
}

/// Release a string returned through an out-parameter. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer produced by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn kinj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kinj_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn take(out: *mut c_char) -> String {
        assert!(!out.is_null());
        let s = CStr::from_ptr(out).to_str().expect("utf8").to_owned();
        kinj_string_free(out);
        s
    }

    unsafe fn last_error(ctx: *const KinjContext) -> String {
        CStr::from_ptr(kinj_last_error(ctx))
            .to_str()
            .expect("utf8")
            .to_owned()
    }

    fn ctx(n: u64) -> *mut KinjContext {
        let ctx = unsafe { kinj_context_new(n, ptr::null()) };
        assert!(!ctx.is_null());
        ctx
    }

    fn two_term_json() -> CString {
        let algebra = Arc::new(AnAlgebra::new(1).expect("valid"));
        let label = CanonLabel::new(Some(0), Some(1), 1, 1).expect("valid");
        let x = realize_label(algebra, Field::Rational, &label, (0, 1)).expect("realizable");
        CString::new(x.to_json().to_string()).expect("no NUL in JSON")
    }

    #[test]
    fn classify_round_trips_through_the_c_surface() {
        let ctx = ctx(1);
        let input = two_term_json();
        let mut out: *mut c_char = ptr::null_mut();
        unsafe {
            let status = kinj_classify_json(ctx, input.as_ptr(), &mut out);
            assert_eq!(status, KinjStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take(out)).expect("json");
            assert_eq!(
                v,
                serde_json::json!({"labels": [{"anchor": 1, "end": 1, "mult": 1, "start": 0}]})
            );
            assert_eq!(last_error(ctx), "");
            kinj_context_free(ctx);
        }
    }

    #[test]
    fn realize_feeds_hom_and_reports_the_stable_dimension() {
        let ctx = ctx(1);
        let label = CString::new("0:0:1").expect("no NUL");
        let mut stalk: *mut c_char = ptr::null_mut();
        unsafe {
            let status = kinj_realize_label_json(ctx, label.as_ptr(), 0, 0, &mut stalk);
            assert_eq!(status, KinjStatus::Ok);
            let stalk = CString::new(take(stalk)).expect("no NUL");
            let mut out: *mut c_char = ptr::null_mut();
            let status = kinj_hom_dim_json(ctx, stalk.as_ptr(), stalk.as_ptr(), 0, &mut out);
            assert_eq!(status, KinjStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take(out)).expect("json");
            assert_eq!(v, serde_json::json!({"dim": 2, "stableAt": 4}));
            kinj_context_free(ctx);
        }
    }

    #[test]
    fn decompose_reports_the_interval_list() {
        let quiver = kinj::gen::line_quiver(0, 1, &[true]);
        let rep = Rep::new(
            quiver.clone(),
            Field::Rational,
            vec![1, 1],
            vec![kinj::exactlin::Matrix::identity(Field::Rational, 1)],
        )
        .expect("valid rep");
        let mut doc = rep.to_json();
        doc["quiver"] = quiver.to_json();
        let input = CString::new(doc.to_string()).expect("no NUL");
        let ctx = ctx(1);
        let mut out: *mut c_char = ptr::null_mut();
        unsafe {
            let status = kinj_decompose_rep_json(ctx, input.as_ptr(), &mut out);
            assert_eq!(status, KinjStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take(out)).expect("json");
            assert_eq!(
                v,
                serde_json::json!({"intervals": [{
                    "component": 0, "a": 0, "b": 1, "mult": 1,
                    "clippedLeft": true, "clippedRight": true,
                }]})
            );
            kinj_context_free(ctx);
        }
    }

    #[test]
    fn failures_set_the_status_and_the_message() {
        let ctx = ctx(1);
        let mut out: *mut c_char = ptr::null_mut();
        unsafe {
            // null argument
            let status = kinj_classify_json(ctx, ptr::null(), &mut out);
            assert_eq!(status, KinjStatus::NullArgument);

            // invalid utf-8
            let bad = CString::new(vec![0xff]).expect("single byte");
            let status = kinj_classify_json(ctx, bad.as_ptr(), &mut out);
            assert_eq!(status, KinjStatus::InvalidUtf8);

            // malformed json names the position
            let broken = CString::new("{\n  \"n\": }").expect("no NUL");
            let status = kinj_classify_json(ctx, broken.as_ptr(), &mut out);
            assert_eq!(status, KinjStatus::ParseError);
            assert!(last_error(ctx).contains("line 2"));

            // mismatched algebras are a domain error
            let one = two_term_json();
            let label = CString::new("0:0:1").expect("no NUL");
            let mut other: *mut c_char = ptr::null_mut();
            let ctx3 = kinj_context_new(3, ptr::null());
            let status = kinj_realize_label_json(ctx3, label.as_ptr(), 0, 0, &mut other);
            assert_eq!(status, KinjStatus::Ok);
            let other = CString::new(take(other)).expect("no NUL");
            let status = kinj_hom_dim_json(ctx, one.as_ptr(), other.as_ptr(), 0, &mut out);
            assert_eq!(status, KinjStatus::DomainError);
            assert!(!last_error(ctx).is_empty());

            // success clears the message
            let status = kinj_classify_json(ctx, one.as_ptr(), &mut out);
            assert_eq!(status, KinjStatus::Ok);
            kinj_string_free(out);
            assert_eq!(last_error(ctx), "");

            kinj_context_free(ctx3);
            kinj_context_free(ctx);
        }
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        unsafe {
            assert!(kinj_context_new(0, ptr::null()).is_null());
            let nine = CString::new("fp:9").expect("no NUL");
            assert!(kinj_context_new(1, nine.as_ptr()).is_null());
            let ok = CString::new("fp:5").expect("no NUL");
            let ctx = kinj_context_new(2, ok.as_ptr());
            assert!(!ctx.is_null());
            kinj_context_free(ctx);
            assert!(kinj_last_error(ptr::null()).is_null());
            kinj_string_free(ptr::null_mut());
            kinj_context_free(ptr::null_mut());
        }
    }

    #[test]
    fn version_is_the_package_version() {
        let v = unsafe { CStr::from_ptr(kinj_version()) };
        assert_eq!(v.to_str().expect("utf8"), env!("CARGO_PKG_VERSION"));
    }
}
