//! C ABI over the `motzkin` library.
//!
//! Parameters and algebra elements are exposed as opaque handles. Every
//! fallible call returns an [`MzStatus`]; on failure the message is kept in a
//! thread-local slot readable through [`mz_last_error`]. Strings returned by the
//! library are owned by the caller and released with [`mz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use motzkin::algebra::{parse_word, AlgElem};
use motzkin::bimodules::{fuse, FusionLabel};
use motzkin::idempotents::jw;
use motzkin::scalars::Param;
use motzkin::tangles::count_motzkin;
use motzkin::towers::gns_dim;
use motzkin::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Genericity = 4,
    Shape = 5,
    OutOfRange = 6,
    Domain = 7,
    Panic = 8,
}

/// A loop parameter D.
pub struct MzParam(Param);

/// An element of a tangle span with exact coefficients.
pub struct MzElem(AlgElem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> MzStatus {
    match e {
        Error::Parse(_) => MzStatus::Parse,
        Error::GenericityViolation { .. } => MzStatus::Genericity,
        Error::ShapeMismatch { .. } | Error::SeamMismatch(_) => MzStatus::Shape,
        Error::IndexOutOfRange { .. } | Error::BoundExceeded { .. } => MzStatus::OutOfRange,
        Error::DomainError(_) | Error::NotIdempotent(_) | Error::DivisionByZero => MzStatus::Domain,
    }
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), MzStatus>) -> MzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MzStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            MzStatus::Panic
        }
    }
}

fn lib<T>(r: motzkin::Result<T>) -> Result<T, MzStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MzStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(MzStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        MzStatus::InvalidUtf8
    })
}

unsafe fn out_ptr<'a, T>(out: *mut T) -> Result<&'a mut T, MzStatus> {
    out.as_mut().ok_or_else(|| {
        set_error("null output pointer");
        MzStatus::NullPointer
    })
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, MzStatus> {
    h.as_ref().ok_or_else(|| {
        set_error("null handle");
        MzStatus::NullPointer
    })
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mz_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a pointer obtained from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `4`, `7/2` or `cos:5`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_param_parse(text: *const c_char, out: *mut *mut MzParam) -> MzStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let p: Param = lib(read_str(text)?.parse())?;
        *out = Box::into_raw(Box::new(MzParam(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from [`mz_param_parse`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mz_param_free(p: *mut MzParam) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The k-th Motzkin number in decimal.
///
/// # Safety
/// `out` must be a writable pointer; the string is released with [`mz_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mz_count_motzkin(k: usize, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = c_string(count_motzkin(k).to_string());
        Ok(())
    })
}

/// Rank of the trace form on tangles with j boundary points.
///
/// # Safety
/// `p` must be a live parameter handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_gns_dim(p: *const MzParam, j: usize, out: *mut usize) -> MzStatus {
    guard(|| {
        let param = &handle(p)?.0;
        let out = out_ptr(out)?;
        *out = lib(gns_dim(j, param))?;
        Ok(())
    })
}

/// Parses a word such as `2*e1 + r1*l1` in M_n.
///
/// # Safety
/// `p` must be a live parameter handle, `word` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_elem_parse(
    p: *const MzParam,
    word: *const c_char,
    n: usize,
    out: *mut *mut MzElem,
) -> MzStatus {
    guard(|| {
        let param = &handle(p)?.0;
        let out = out_ptr(out)?;
        let x = lib(parse_word(read_str(word)?, n, param))?;
        *out = Box::into_raw(Box::new(MzElem(x)));
        Ok(())
    })
}

/// The idempotent g_k.
///
/// # Safety
/// `p` must be a live parameter handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_jw(p: *const MzParam, k: usize, out: *mut *mut MzElem) -> MzStatus {
    guard(|| {
        let param = &handle(p)?.0;
        let out = out_ptr(out)?;
        *out = Box::into_raw(Box::new(MzElem(lib(jw(k, param))?)));
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_elem_mul(a: *const MzElem, b: *const MzElem, out: *mut *mut MzElem) -> MzStatus {
    guard(|| {
        let (a, b) = (&handle(a)?.0, &handle(b)?.0);
        let out = out_ptr(out)?;
        *out = Box::into_raw(Box::new(MzElem(lib(a.multiply(b))?)));
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_elem_equal(a: *const MzElem, b: *const MzElem, out: *mut bool) -> MzStatus {
    guard(|| {
        let (a, b) = (&handle(a)?.0, &handle(b)?.0);
        *out_ptr(out)? = a == b;
        Ok(())
    })
}

/// Normalized trace, rendered as text.
///
/// # Safety
/// `x` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_elem_trace(x: *const MzElem, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let x = &handle(x)?.0;
        let out = out_ptr(out)?;
        *out = c_string(lib(x.trace())?.to_string());
        Ok(())
    })
}

/// # Safety
/// `x` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_elem_to_json(x: *const MzElem, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let x = &handle(x)?.0;
        let out = out_ptr(out)?;
        *out = c_string(x.to_json().to_string());
        Ok(())
    })
}

/// # Safety
/// `x` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mz_elem_free(x: *mut MzElem) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Fuses (k,i) with (l,j) and returns the labels as JSON `[[k,i],...]`.
///
/// # Safety
/// `p` must be a live parameter handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_fuse(
    p: *const MzParam,
    k: usize,
    i: usize,
    l: usize,
    j: usize,
    out: *mut *mut c_char,
) -> MzStatus {
    guard(|| {
        let param = &handle(p)?.0;
        let out = out_ptr(out)?;
        let a = lib(FusionLabel::new(k, i, param))?;
        let b = lib(FusionLabel::new(l, j, param))?;
        let fused = fuse(a, b, param.cap());
        let pairs: Vec<String> = fused.labels.iter().map(|x| format!("[{},{}]", x.k, x.i)).collect();
        *out = c_string(format!("[{}]", pairs.join(",")));
        Ok(())
    })
}
