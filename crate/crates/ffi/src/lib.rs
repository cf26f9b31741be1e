//! C ABI for the freetl engine.
//!
//! An engine handle carries the loop value and enumeration settings. Every
//! call returns a [`FreetlStatus`]; results are JSON strings owned by the
//! caller and released with [`freetl_string_free`]. On failure
//! [`freetl_last_error`] describes the problem on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use freetl::cli::{self, Format, Outcome, RunConfig};
use freetl::coeff::DeltaMode;
use freetl::word::{Sign, Word};
use freetl::Error;

/// Result codes of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreetlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A word, sign or delta could not be parsed.
    Parse = 3,
    /// Settings out of range (e.g. max_len above 12, symbolic delta where a
    /// number is needed).
    Config = 4,
    /// The computation is undefined at this delta (vanishing quantum integer).
    Singular = 5,
    /// The verification suite found a failing check; the report is still
    /// returned.
    CheckFailed = 6,
    /// Any other engine error.
    Engine = 7,
    /// The engine panicked; this is a bug.
    Panic = 8,
}

/// Opaque engine handle.
pub struct FreetlEngine {
    config: RunConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FreetlStatus {
    match e {
        Error::Parse(_) => FreetlStatus::Parse,
        Error::Config(_) | Error::OutOfRange(_) => FreetlStatus::Config,
        Error::Singular { .. } | Error::Pole(_) => FreetlStatus::Singular,
        _ => FreetlStatus::Engine,
    }
}

fn guard(f: impl FnOnce() -> Result<FreetlStatus, (FreetlStatus, String)>) -> FreetlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            set_error("");
            s
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            FreetlStatus::Panic
        }
    }
}

fn engine_err(e: Error) -> (FreetlStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (FreetlStatus, String)> {
    if p.is_null() {
        return Err((FreetlStatus::NullPointer, "null string argument".into()));
    }
    // SAFETY: caller passes a NUL-terminated string valid for this call.
    CStr::from_ptr(p).to_str().map_err(|_| (FreetlStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn engine_ref<'a>(e: *const FreetlEngine) -> Result<&'a FreetlEngine, (FreetlStatus, String)> {
    // SAFETY: non-null handles come from freetl_engine_new.
    e.as_ref().ok_or((FreetlStatus::NullPointer, "null engine".into()))
}

unsafe fn emit(out: *mut *mut c_char, result: freetl::Result<Outcome>) -> Result<FreetlStatus, (FreetlStatus, String)> {
    if out.is_null() {
        return Err((FreetlStatus::NullPointer, "null output pointer".into()));
    }
    let outcome = result.map_err(engine_err)?;
    let s = CString::new(outcome.body).map_err(|_| (FreetlStatus::Engine, "output contains NUL".into()))?;
    // SAFETY: out is non-null and writable per the contract.
    *out = s.into_raw();
    if outcome.pass {
        Ok(FreetlStatus::Ok)
    } else {
        set_error("verification failed");
        Ok(FreetlStatus::CheckFailed)
    }
}

fn json_config(engine: &FreetlEngine) -> RunConfig {
    RunConfig { format: Format::Json, output: None, ..engine.config.clone() }
}

/// Create an engine. `delta` is `"p/q"`, an integer, or `"symbolic"`; NULL
/// means 3. Defaults: max_len 8, fixed seed.
///
/// # Safety
/// `delta` is NULL or a NUL-terminated string; `out` points to writable
/// storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn freetl_engine_new(delta: *const c_char, out: *mut *mut FreetlEngine) -> FreetlStatus {
    guard(|| {
        if out.is_null() {
            return Err((FreetlStatus::NullPointer, "null output pointer".into()));
        }
        let mut config = RunConfig::default();
        if !delta.is_null() {
            config.delta = read_str(delta)?.parse::<DeltaMode>().map_err(engine_err)?;
        }
        *out = Box::into_raw(Box::new(FreetlEngine { config }));
        Ok(FreetlStatus::Ok)
    })
}

/// Release an engine. NULL is ignored.
///
/// # Safety
/// `engine` is NULL or a handle from [`freetl_engine_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn freetl_engine_free(engine: *mut FreetlEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Set the largest word length enumerated by table and verify calls (at most 12).
///
/// # Safety
/// `engine` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn freetl_engine_set_max_len(engine: *mut FreetlEngine, max_len: usize) -> FreetlStatus {
    guard(|| {
        // SAFETY: non-null handles come from freetl_engine_new.
        let e = engine.as_mut().ok_or((FreetlStatus::NullPointer, "null engine".into()))?;
        let config = RunConfig { max_len, ..e.config.clone() };
        config.validate().map_err(engine_err)?;
        e.config = config;
        Ok(FreetlStatus::Ok)
    })
}

/// Set the seed of the randomized checks.
///
/// # Safety
/// `engine` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn freetl_engine_set_seed(engine: *mut FreetlEngine, seed: u64) -> FreetlStatus {
    guard(|| {
        // SAFETY: non-null handles come from freetl_engine_new.
        let e = engine.as_mut().ok_or((FreetlStatus::NullPointer, "null engine".into()))?;
        e.config.seed = seed;
        Ok(FreetlStatus::Ok)
    })
}

/// Dimension table of every word up to max_len, as JSON.
///
/// # Safety
/// `engine` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn freetl_dims(engine: *const FreetlEngine, out: *mut *mut c_char) -> FreetlStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        emit(out, cli::cmd_dims(&json_config(e)))
    })
}

/// Gram report of a word (`"+-+-"`; the empty string is the empty word).
///
/// # Safety
/// `engine` is a live handle; `word` is a NUL-terminated string; `out`
/// points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn freetl_gram(engine: *const FreetlEngine, word: *const c_char, out: *mut *mut c_char) -> FreetlStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        let w: Word = read_str(word)?.parse().map_err(engine_err)?;
        emit(out, cli::cmd_gram(&w, &json_config(e)))
    })
}

/// Jones-Wenzl projection on `n` alternating points starting with `sign`
/// (`'+'` or `'-'`).
///
/// # Safety
/// `engine` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn freetl_jw(engine: *const FreetlEngine, n: usize, sign: c_char, out: *mut *mut c_char) -> FreetlStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        let sign = Sign::from_char(sign as u8 as char)
            .ok_or_else(|| (FreetlStatus::Parse, format!("sign must be '+' or '-', got {:?}", sign as u8 as char)))?;
        emit(out, cli::cmd_jw(n, sign, &json_config(e)))
    })
}

/// Minimality report of `f_vv` for a nonempty word. Needs a numeric delta.
///
/// # Safety
/// `engine` is a live handle; `word` is a NUL-terminated string; `out`
/// points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn freetl_minimal(engine: *const FreetlEngine, word: *const c_char, out: *mut *mut c_char) -> FreetlStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        let w: Word = read_str(word)?.parse().map_err(engine_err)?;
        emit(out, cli::cmd_minimal(&w, &json_config(e)))
    })
}

/// Run every verification suite. Returns `CheckFailed` with the report in
/// `out` when a check fails.
///
/// # Safety
/// `engine` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn freetl_verify(engine: *const FreetlEngine, out: *mut *mut c_char) -> FreetlStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        emit(out, cli::cmd_verify(&json_config(e), None))
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn freetl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Engine version as a static string.
#[no_mangle]
pub extern "C" fn freetl_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` is NULL or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn freetl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
