//! C ABI over `nonnest`.
//!
//! Every fallible function returns a [`NonnestStatus`]; results go through
//! out-pointers. On failure, [`nonnest_last_error_message`] describes the
//! error for the calling thread. Strings returned by this library must be
//! released with [`nonnest_string_free`], pattern sets with
//! [`nonnest_pattern_set_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nonnest::catalog::{builtin_catalog, verify, Status};
use nonnest::{Error, PatternSet, Word};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonnestStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Internal = 5,
}

/// Opaque set of patterns.
pub struct NonnestPatternSet {
    inner: PatternSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: NonnestStatus, msg: impl Into<String>) -> NonnestStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> NonnestStatus {
    match e {
        Error::WordSyntax(_) | Error::ZeroLetter | Error::EmptyPattern => NonnestStatus::Parse,
        _ => NonnestStatus::Precondition,
    }
}

/// Runs `f`, converting panics into `Internal`.
fn guarded(f: impl FnOnce() -> Result<(), (NonnestStatus, String)>) -> NonnestStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NonnestStatus::Ok,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(NonnestStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (NonnestStatus, String)> {
    if p.is_null() {
        return Err((NonnestStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (NonnestStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn lib_err(e: Error) -> (NonnestStatus, String) {
    (status_of(&e), e.to_string())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nonnest_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Bumped whenever results may change.
#[no_mangle]
pub extern "C" fn nonnest_engine_version() -> u32 {
    nonnest::ENGINE_VERSION
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nonnest_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a comma-separated pattern list such as `"123,231"` (`""` is the empty set).
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nonnest_pattern_set_new(text: *const c_char, out: *mut *mut NonnestPatternSet) -> NonnestStatus {
    guarded(|| {
        if out.is_null() {
            return Err((NonnestStatus::NullPointer, "out is null".into()));
        }
        let set: PatternSet = read_str(text, "text")?.parse().map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NonnestPatternSet { inner: set }));
        Ok(())
    })
}

/// # Safety
/// `set` must come from [`nonnest_pattern_set_new`] and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn nonnest_pattern_set_free(set: *mut NonnestPatternSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of distinct patterns after standardization; 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nonnest_pattern_set_len(set: *const NonnestPatternSet) -> usize {
    set.as_ref().map_or(0, |s| s.inner.len())
}

/// Number of nonnesting permutations of size `n` avoiding `set`, as a
/// decimal string in `*out`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nonnest_count_avoiders(
    set: *const NonnestPatternSet,
    n: usize,
    out: *mut *mut c_char,
) -> NonnestStatus {
    guarded(|| {
        let set = set.as_ref().ok_or((NonnestStatus::NullPointer, "set is null".to_string()))?;
        if out.is_null() {
            return Err((NonnestStatus::NullPointer, "out is null".into()));
        }
        *out = to_c_string(nonnest::count_avoiders(n, &set.inner).to_string());
        Ok(())
    })
}

/// Whether `word` (e.g. `"1 2 1 2"` or `"1212"`) avoids 1221 and 2112.
/// Fails if some value does not appear exactly twice.
///
/// # Safety
/// `word` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nonnest_is_nonnesting(word: *const c_char, out: *mut bool) -> NonnestStatus {
    guarded(|| {
        if out.is_null() {
            return Err((NonnestStatus::NullPointer, "out is null".into()));
        }
        let w: Word = read_str(word, "word")?.parse().map_err(lib_err)?;
        *out = nonnest::is_nonnesting(&w).map_err(lib_err)?;
        Ok(())
    })
}

/// Whether `word` contains `pattern`.
///
/// # Safety
/// Both strings must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nonnest_contains_pattern(
    word: *const c_char,
    pattern: *const c_char,
    out: *mut bool,
) -> NonnestStatus {
    guarded(|| {
        if out.is_null() {
            return Err((NonnestStatus::NullPointer, "out is null".into()));
        }
        let w: Word = read_str(word, "word")?.parse().map_err(lib_err)?;
        let p: Word = read_str(pattern, "pattern")?.parse().map_err(lib_err)?;
        if p.is_empty() {
            return Err((NonnestStatus::Parse, "empty pattern".into()));
        }
        *out = nonnest::contains_pattern(&w, &p);
        Ok(())
    })
}

/// Verifies the proven catalog entries matching `filter` (substring of anchor
/// or OEIS id; `""` for all) up to `n_max`. Writes a JSON array of reports
/// to `*json_out` and whether every report passed to `*passed`.
///
/// # Safety
/// `filter` must be a valid C string; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn nonnest_catalog_verify(
    filter: *const c_char,
    n_max: usize,
    json_out: *mut *mut c_char,
    passed: *mut bool,
) -> NonnestStatus {
    guarded(|| {
        if json_out.is_null() || passed.is_null() {
            return Err((NonnestStatus::NullPointer, "out is null".into()));
        }
        let filter = read_str(filter, "filter")?;
        let reports: Vec<_> = builtin_catalog()
            .iter()
            .filter(|e| e.status == Status::Proven && e.matches_filter(filter))
            .map(|e| verify(e, n_max))
            .collect();
        let json = serde_json::to_string(&reports).map_err(|e| (NonnestStatus::Internal, e.to_string()))?;
        *passed = reports.iter().all(|r| r.passed());
        *json_out = to_c_string(json);
        Ok(())
    })
}
