//! C ABI for kshadow.
//!
//! Groups are passed as opaque handles created by the `*_parse` and
//! computing functions and released with the matching `*_free`. Every
//! function returns a [`KsStatus`]; on failure [`ks_last_error`] describes
//! the problem. Strings returned through out-parameters are owned by the
//! caller and released with [`ks_string_free`]. Panics never cross the
//! boundary; they are reported as [`KsStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kshadow::functors::{bifunctor, pontryagin_dual, Functor};
use kshadow::graded::{GradedGroup, Parity};
use kshadow::group::FgaGroup;
use kshadow::parse::{parse_graded, parse_group};
use kshadow::{cli, kk, Error};

/// Opaque handle to a finitely generated abelian group.
pub struct KsGroup {
    inner: FgaGroup,
}

/// Opaque handle to a Z/2-graded group.
pub struct KsGraded {
    inner: GradedGroup,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Hypothesis = 5,
    Internal = 6,
    Panic = 7,
    OutOfRange = 8,
}

/// Values accepted by the `functor` argument of [`ks_bifunctor`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsFunctor {
    Hom = 0,
    Ext = 1,
    Tor = 2,
    Tensor = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (KsStatus, String);

fn set_last_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn from_core(e: Error) -> Failure {
    let status = match e {
        Error::Parse { .. } => KsStatus::Parse,
        Error::Hypothesis(_) => KsStatus::Hypothesis,
        Error::Internal(_) => KsStatus::Internal,
        _ => KsStatus::Validation,
    };
    (status, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            KsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(Some(format!("panic: {msg}")));
            KsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (KsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (KsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn group_handle(g: FgaGroup) -> *mut KsGroup {
    Box::into_raw(Box::new(KsGroup { inner: g }))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ks_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL if the last
/// call succeeded. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ks_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `Z^r + Z/n + ...` into a new group handle.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_group_parse(text: *const c_char, out: *mut *mut KsGroup) -> KsStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let g = parse_group(text).map_err(from_core)?;
        write_out(out, group_handle(g), "out")
    })
}

/// Releases a group handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ks_group_free(g: *mut KsGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_group_free_rank(g: *const KsGroup, out: *mut usize) -> KsStatus {
    guard(|| write_out(out, deref(g, "g")?.inner.free_rank(), "out"))
}

/// Number of invariant factors.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_group_torsion_count(g: *const KsGroup, out: *mut usize) -> KsStatus {
    guard(|| write_out(out, deref(g, "g")?.inner.torsion().len(), "out"))
}

/// Invariant factor `index` as a decimal string.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_group_torsion_factor(g: *const KsGroup, index: usize, out: *mut *mut c_char) -> KsStatus {
    guard(|| {
        let g = deref(g, "g")?;
        let d = g.inner.torsion().get(index).ok_or_else(|| {
            (
                KsStatus::OutOfRange,
                format!("index {index} out of range for {} factors", g.inner.torsion().len()),
            )
        })?;
        write_out(out, c_string(d.to_string()), "out")
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_group_to_string(g: *const KsGroup, out: *mut *mut c_char) -> KsStatus {
    guard(|| write_out(out, c_string(deref(g, "g")?.inner.to_string()), "out"))
}

/// Parses `[even ; odd]` into a new graded handle.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_graded_parse(text: *const c_char, out: *mut *mut KsGraded) -> KsStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let g = parse_graded(text).map_err(from_core)?;
        write_out(out, Box::into_raw(Box::new(KsGraded { inner: g })), "out")
    })
}

/// Releases a graded handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ks_graded_free(g: *mut KsGraded) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Component in degree `degree` mod 2, as a new group handle.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_graded_component(g: *const KsGraded, degree: i64, out: *mut *mut KsGroup) -> KsStatus {
    guard(|| {
        let g = deref(g, "g")?;
        write_out(out, group_handle(g.inner.get(Parity::of(degree)).clone()), "out")
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_graded_to_string(g: *const KsGraded, out: *mut *mut c_char) -> KsStatus {
    guard(|| write_out(out, c_string(deref(g, "g")?.inner.to_string()), "out"))
}

/// `F(g, h)` for `functor` one of the [`KsFunctor`] values.
///
/// # Safety
/// `g` and `h` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_bifunctor(
    functor: u32,
    g: *const KsGroup,
    h: *const KsGroup,
    out: *mut *mut KsGroup,
) -> KsStatus {
    guard(|| {
        let f = match functor {
            x if x == KsFunctor::Hom as u32 => Functor::Hom,
            x if x == KsFunctor::Ext as u32 => Functor::Ext,
            x if x == KsFunctor::Tor as u32 => Functor::Tor,
            x if x == KsFunctor::Tensor as u32 => Functor::Tensor,
            x => return Err((KsStatus::OutOfRange, format!("unknown functor {x}"))),
        };
        let r = bifunctor(f, &deref(g, "g")?.inner, &deref(h, "h")?.inner);
        write_out(out, group_handle(r.into_value()), "out")
    })
}

/// Character group `Hom(g, T)` of a finite group.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_pontryagin_dual(g: *const KsGroup, out: *mut *mut KsGroup) -> KsStatus {
    guard(|| {
        let d = pontryagin_dual(&deref(g, "g")?.inner).map_err(from_core)?;
        write_out(out, group_handle(d), "out")
    })
}

/// `KK_degree(a, b)` with its Hom and Ext parts. Any out-parameter may be
/// NULL to skip that result.
///
/// # Safety
/// `a` and `b` must be live handles; non-NULL outs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_kk(
    a: *const KsGraded,
    b: *const KsGraded,
    degree: i64,
    out_total: *mut *mut KsGroup,
    out_hom: *mut *mut KsGroup,
    out_ext: *mut *mut KsGroup,
) -> KsStatus {
    guard(|| {
        let r = kk::kk(&deref(a, "a")?.inner, &deref(b, "b")?.inner, Parity::of(degree));
        for (out, g) in [(out_total, r.total), (out_hom, r.hom_part), (out_ext, r.ext_part)] {
            if !out.is_null() {
                out.write(group_handle(g));
            }
        }
        Ok(())
    })
}

/// Runs a job file given as JSON text. Writes the results document and the
/// exit code the command-line tool would use. A job that fails to load still
/// returns `KS_STATUS_OK`, with the error in the document and a nonzero code.
///
/// # Safety
/// `json` must be NUL-terminated; outs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_run_job(
    json: *const c_char,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> KsStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        if out_exit_code.is_null() {
            return Err(null("out_exit_code"));
        }
        let (doc, code) = cli::run_job_json(text);
        out_json.write(c_string(doc));
        out_exit_code.write(code);
        Ok(())
    })
}
