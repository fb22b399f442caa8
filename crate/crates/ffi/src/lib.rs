//! C ABI over `wchar`.
//!
//! Every entry point returns a [`WcharStatus`]. Results come back through out
//! pointers; objects are opaque handles released with the matching `_free`.
//! Strings returned as `char *` are owned by the caller and released with
//! [`wchar_string_free`]. After a failure, [`wchar_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wchar::admissible::{enumerate, exceptional_partition, AdmissibleSet, LevelData};
use wchar::characters::{euler_character, FormalCharacter};
use wchar::rational::parse_rational_list;
use wchar::rootdata::{CentralizerCartan, GoodGrading, Partition};
use wchar::weights::AffineWeight;
use wchar::Error;

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcharStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Invalid input or unmet precondition (bad partition, not admissible, ...).
    Precondition = 2,
    /// An internal consistency audit failed.
    Audit = 3,
    /// A Rust panic was caught at the boundary.
    Panic = 4,
    /// The caller's buffer is too small; the required size was reported.
    BufferTooSmall = 5,
}

/// Good grading of a partition.
pub struct WcharGrading {
    inner: GoodGrading,
}

/// Principal admissible weights at one level, flagged for one partition.
pub struct WcharAdmissibleSet {
    inner: AdmissibleSet,
}

/// A truncated Euler-Poincare character.
pub struct WcharCharacter {
    inner: FormalCharacter,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> WcharStatus {
    set_error(e.to_string());
    if e.is_audit_failure() {
        WcharStatus::Audit
    } else {
        WcharStatus::Precondition
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), WcharStatus>) -> WcharStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            WcharStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            WcharStatus::Panic
        }
    }
}

fn lift<T>(r: wchar::Result<T>) -> Result<T, WcharStatus> {
    r.map_err(|e| status_of(&e))
}

fn null_check<T>(p: *const T, name: &str) -> Result<(), WcharStatus> {
    if p.is_null() {
        set_error(format!("{name} is null"));
        Err(WcharStatus::NullArgument)
    } else {
        Ok(())
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, WcharStatus> {
    null_check(s, name)?;
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{name} is not valid UTF-8"));
        WcharStatus::Precondition
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON contains no NUL").into_raw()
}

/// Copies `s` and a terminating NUL into `buf` of length `len`; reports the
/// required length (including the NUL) through `needed` when non-null.
///
/// # Safety
/// `buf` must be valid for `len` bytes when `len > 0`.
unsafe fn write_buffer(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), WcharStatus> {
    let bytes = s.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || len < bytes.len() + 1 {
        set_error(format!("buffer of {len} bytes, {} needed", bytes.len() + 1));
        return Err(WcharStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
    *buf.add(bytes.len()) = 0;
    Ok(())
}

/// Message for the last failure on this thread (empty after a success).
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wchar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wchar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer returned by a `_json` function, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wchar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the good grading of `partition` (e.g. `"2,2"`).
///
/// # Safety
/// `partition` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wchar_grading_new(partition: *const c_char, out: *mut *mut WcharGrading) -> WcharStatus {
    guard(|| {
        null_check(out, "out")?;
        let part = lift(Partition::parse(read_str(partition, "partition")?))?;
        let inner = lift(GoodGrading::new(&part))?;
        *out = Box::into_raw(Box::new(WcharGrading { inner }));
        Ok(())
    })
}

/// `d_chi`, the number of negative-degree roots.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wchar_grading_dchi(g: *const WcharGrading, out: *mut usize) -> WcharStatus {
    guard(|| {
        null_check(g, "grading")?;
        null_check(out, "out")?;
        *out = (*g).inner.dchi();
        Ok(())
    })
}

/// Grading data as JSON; free the result with [`wchar_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wchar_grading_json(g: *const WcharGrading, out: *mut *mut c_char) -> WcharStatus {
    guard(|| {
        null_check(g, "grading")?;
        null_check(out, "out")?;
        let json = serde_json::to_string(&(*g).inner.to_json()).expect("serializable");
        *out = to_c_string(json);
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from [`wchar_grading_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wchar_grading_free(g: *mut WcharGrading) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Enumerates principal admissible weights at `k + n = p / q` and flags them
/// for `partition`.
///
/// # Safety
/// `partition` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wchar_admissible_new(
    partition: *const c_char,
    p: i64,
    q: i64,
    out: *mut *mut WcharAdmissibleSet,
) -> WcharStatus {
    guard(|| {
        null_check(out, "out")?;
        let part = lift(Partition::parse(read_str(partition, "partition")?))?;
        let g = lift(GoodGrading::new(&part))?;
        let level = lift(LevelData::new(part.n(), p, q))?;
        let inner = lift(enumerate(&level, &g))?;
        *out = Box::into_raw(Box::new(WcharAdmissibleSet { inner }));
        Ok(())
    })
}

/// Sizes of the admissible set, `M~_k`, `M_k` and the number of classes.
/// Any out pointer may be null.
///
/// # Safety
/// `set` must be a live handle; non-null out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wchar_admissible_counts(
    set: *const WcharAdmissibleSet,
    total: *mut usize,
    mtilde: *mut usize,
    mk: *mut usize,
    classes: *mut usize,
) -> WcharStatus {
    guard(|| {
        null_check(set, "set")?;
        let s = &(*set).inner;
        for (ptr, v) in [
            (total, s.weights.len()),
            (mtilde, s.mtilde_count()),
            (mk, s.mk_count()),
            (classes, s.classes.len()),
        ] {
            if !ptr.is_null() {
                *ptr = v;
            }
        }
        Ok(())
    })
}

/// The admissible set as JSON; free the result with [`wchar_string_free`].
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wchar_admissible_json(set: *const WcharAdmissibleSet, out: *mut *mut c_char) -> WcharStatus {
    guard(|| {
        null_check(set, "set")?;
        null_check(out, "out")?;
        let json = serde_json::to_string(&(*set).inner).expect("serializable");
        *out = to_c_string(json);
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a handle from [`wchar_admissible_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wchar_admissible_free(set: *mut WcharAdmissibleSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Euler-Poincare character for the weight with
/// `q <lambda_bar + rho_bar, alpha_i^vee> = weight[i]` (comma separated rationals).
///
/// # Safety
/// String arguments must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wchar_character_new(
    partition: *const c_char,
    p: i64,
    q: i64,
    weight: *const c_char,
    order: u32,
    cone_depth: u32,
    out: *mut *mut WcharCharacter,
) -> WcharStatus {
    guard(|| {
        null_check(out, "out")?;
        let part = lift(Partition::parse(read_str(partition, "partition")?))?;
        let g = lift(GoodGrading::new(&part))?;
        let level = lift(LevelData::new(part.n(), p, q))?;
        let j = lift(parse_rational_list(read_str(weight, "weight")?))?;
        if j.len() + 1 != part.n() {
            return Err(status_of(&Error::InvalidInput(format!("weight needs {} entries", part.n() - 1))));
        }
        let lam = AffineWeight::from_shifted_simple(&j, q, level.k());
        let c = CentralizerCartan::new(&g);
        let inner = lift(euler_character(&lam, &g, &c, order, cone_depth))?;
        *out = Box::into_raw(Box::new(WcharCharacter { inner }));
        Ok(())
    })
}

/// Coefficients of `q^0 .. q^order`, summed over restricted weights, into
/// `buf[0..len]`. `written` receives `order + 1` in every case.
///
/// # Safety
/// `ch` must be a live handle, `buf` valid for `len` values.
#[no_mangle]
pub unsafe extern "C" fn wchar_character_q_series(
    ch: *const WcharCharacter,
    buf: *mut i64,
    len: usize,
    written: *mut usize,
) -> WcharStatus {
    guard(|| {
        null_check(ch, "character")?;
        let series = (*ch).inner.q_series();
        if !written.is_null() {
            *written = series.len();
        }
        if buf.is_null() || len < series.len() {
            set_error(format!("buffer of {len} values, {} needed", series.len()));
            return Err(WcharStatus::BufferTooSmall);
        }
        for (k, v) in series.iter().enumerate() {
            let v = i64::try_from(*v).map_err(|_| {
                set_error(format!("coefficient of q^{k} overflows int64"));
                WcharStatus::Precondition
            })?;
            *buf.add(k) = v;
        }
        Ok(())
    })
}

/// The character as JSON; free the result with [`wchar_string_free`].
///
/// # Safety
/// `ch` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wchar_character_json(ch: *const WcharCharacter, out: *mut *mut c_char) -> WcharStatus {
    guard(|| {
        null_check(ch, "character")?;
        null_check(out, "out")?;
        let json = serde_json::to_string(&(*ch).inner.to_json()).expect("serializable");
        *out = to_c_string(json);
        Ok(())
    })
}

/// # Safety
/// `ch` must be null or a handle from [`wchar_character_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wchar_character_free(ch: *mut WcharCharacter) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// Writes the exceptional partition for `(n, p, q)` (e.g. `"2,2"`) into `buf`.
/// `needed` (may be null) receives the size including the terminating NUL.
///
/// # Safety
/// `buf` must be valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn wchar_exceptional_partition(
    n: usize,
    p: i64,
    q: i64,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> WcharStatus {
    guard(|| {
        let part = lift(exceptional_partition(n, p, q))?;
        write_buffer(&part.to_string(), buf, len, needed)
    })
}
