//! C ABI over `orthosps-core`.
//!
//! Instances are passed around as opaque `OrthospsInstance` pointers that
//! must be released with [`orthosps_free`]. Every fallible call returns an
//! [`OrthospsStatus`]; on failure a description is available from
//! [`orthosps_last_error_message`] on the same thread. Strings handed out by
//! the library are NUL-terminated UTF-8 and must be released with
//! [`orthosps_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orthosps_core::classical::ClassicalData;
use orthosps_core::{
    compose_shuffled, decomposition_morphism, gen_boolean, gen_mo, io, lemma_suite, verify_classical_theorems,
    verify_morphism, Error, OrthoSps, SamplingConfig, Seed,
};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthospsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Syntax = 4,
    /// The instance violates one of the axioms or is malformed.
    Invalid = 5,
    /// A size limit would be exceeded.
    TooLarge = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque handle to a validated orthocomplemented state property system.
pub struct OrthospsInstance(OrthoSps);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("NUL bytes were removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn status_of(error: &Error) -> OrthospsStatus {
    match error {
        Error::Syntax { .. } | Error::VersionMismatch { .. } => OrthospsStatus::Syntax,
        Error::CapExceeded { .. } | Error::ProductTooLarge { .. } => OrthospsStatus::TooLarge,
        Error::InvalidParameter(_) | Error::EmptyPartsList => OrthospsStatus::InvalidArgument,
        Error::InternalTheoremViolation(_) => OrthospsStatus::Internal,
        _ => OrthospsStatus::Invalid,
    }
}

fn fail(status: OrthospsStatus, message: impl Into<String>) -> OrthospsStatus {
    set_last_error(message.into());
    status
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), OrthospsStatus>) -> OrthospsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OrthospsStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(OrthospsStatus::Panic, "panic inside orthosps"),
    }
}

fn core(error: Error) -> OrthospsStatus {
    fail(status_of(&error), format!("{}: {error}", error.kind()))
}

unsafe fn instance<'a>(handle: *const OrthospsInstance) -> Result<&'a OrthoSps, OrthospsStatus> {
    handle
        .as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(OrthospsStatus::NullPointer, "instance handle is null"))
}

unsafe fn store(out: *mut *mut OrthospsInstance, osps: OrthoSps) -> Result<(), OrthospsStatus> {
    if out.is_null() {
        return Err(fail(OrthospsStatus::NullPointer, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(OrthospsInstance(osps)));
    Ok(())
}

unsafe fn write_count(out: *mut usize, value: usize) -> Result<(), OrthospsStatus> {
    if out.is_null() {
        return Err(fail(OrthospsStatus::NullPointer, "output pointer is null"));
    }
    *out = value;
    Ok(())
}

/// Message of the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn orthosps_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Parses and validates a JSON instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn orthosps_parse(json: *const c_char, out: *mut *mut OrthospsInstance) -> OrthospsStatus {
    guard(|| {
        if json.is_null() {
            return Err(fail(OrthospsStatus::NullPointer, "json is null"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| fail(OrthospsStatus::InvalidUtf8, e.to_string()))?;
        store(out, io::load(text).map_err(core)?)
    })
}

/// The Boolean lattice on `n` states.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn orthosps_gen_boolean(n: usize, out: *mut *mut OrthospsInstance) -> OrthospsStatus {
    guard(|| store(out, gen_boolean(n).map_err(core)?))
}

/// The horizontal sum of `k` four-element Boolean blocks.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn orthosps_gen_mo(k: usize, out: *mut *mut OrthospsInstance) -> OrthospsStatus {
    guard(|| store(out, gen_mo(k).map_err(core)?))
}

/// Direct union of `len` instances with states shuffled by `seed`.
///
/// # Safety
/// `parts` must point to `len` valid handles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orthosps_compose(
    parts: *const *const OrthospsInstance,
    len: usize,
    seed: u64,
    out: *mut *mut OrthospsInstance,
) -> OrthospsStatus {
    guard(|| {
        if parts.is_null() && len > 0 {
            return Err(fail(OrthospsStatus::NullPointer, "parts is null"));
        }
        let handles = if len == 0 { &[][..] } else { std::slice::from_raw_parts(parts, len) };
        let owned = handles
            .iter()
            .map(|&h| instance(h).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        store(out, compose_shuffled(&owned, Seed(seed)).map_err(core)?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn orthosps_free(handle: *mut OrthospsInstance) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orthosps_state_count(handle: *const OrthospsInstance) -> usize {
    handle.as_ref().map_or(0, |h| h.0.state_count())
}

/// Number of properties, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orthosps_property_count(handle: *const OrthospsInstance) -> usize {
    handle.as_ref().map_or(0, |h| h.0.len())
}

/// Number of classical properties.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn orthosps_classical_property_count(
    handle: *const OrthospsInstance,
    out: *mut usize,
) -> OrthospsStatus {
    guard(|| {
        let data = ClassicalData::new(instance(handle)?).map_err(core)?;
        write_count(out, data.classical().len())
    })
}

/// Number of classical states, which is also the number of components.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn orthosps_classical_state_count(
    handle: *const OrthospsInstance,
    out: *mut usize,
) -> OrthospsStatus {
    guard(|| {
        let data = ClassicalData::new(instance(handle)?).map_err(core)?;
        write_count(out, data.omega().len())
    })
}

/// Canonical JSON serialization. Release the result with
/// [`orthosps_string_free`].
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn orthosps_serialize(handle: *const OrthospsInstance, out: *mut *mut c_char) -> OrthospsStatus {
    guard(|| {
        let text = io::serialize(instance(handle)?);
        if out.is_null() {
            return Err(fail(OrthospsStatus::NullPointer, "output pointer is null"));
        }
        let text = CString::new(text).map_err(|e| fail(OrthospsStatus::Internal, e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// Runs the classical-structure checks, the decomposition identities and the
/// decomposition round trip with default sampling. `*passed` is set to 1 if
/// no counterexample was found and 0 otherwise.
///
/// # Safety
/// `handle` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn orthosps_check(handle: *const OrthospsInstance, passed: *mut i32) -> OrthospsStatus {
    guard(|| {
        let osps = instance(handle)?;
        if passed.is_null() {
            return Err(fail(OrthospsStatus::NullPointer, "output pointer is null"));
        }
        let cfg = SamplingConfig::default();
        let classical = verify_classical_theorems(osps, &cfg).map_err(core)?;
        let lemmas = lemma_suite(osps, &cfg).map_err(core)?;
        let d = decomposition_morphism(osps).map_err(core)?;
        let morphism = verify_morphism(&d.pair, osps, &d.union.osps);
        *passed = i32::from(classical.passed && lemmas.passed && morphism.passed);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn orthosps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
