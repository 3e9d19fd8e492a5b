//! C ABI over `entmix`.
//!
//! States live behind opaque `EntmixState` handles. Every fallible call
//! returns an `EntmixStatus` and writes its result through an out-pointer;
//! the message for the most recent failure on the calling thread is
//! available from `entmix_last_error_message`. Strings returned by the
//! library are owned by the caller and released with `entmix_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entmix::criteria::{ppt_test, purity_criterion, wootters_concurrence};
use entmix::io::{construct_family, parse_family_ref, State};
use entmix::report::detect;
use entmix::tensor::purity;
use entmix::zoo::{bell_state, dicke_state, ghz_state, stormer_purity, stormer_state, w_state, Bell, DickeParams, Sign};
use entmix::{Error, SubsystemSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntmixStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Shape = 4,
    Contract = 5,
    Positivity = 6,
    Capacity = 7,
    Panic = 8,
}

/// Opaque state handle (ket or density matrix).
pub struct EntmixState {
    inner: State,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(EntmixStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Shape(_) => EntmixStatus::Shape,
            Error::Contract(_) | Error::Hypothesis(_) => EntmixStatus::Contract,
            Error::Capacity { .. } => EntmixStatus::Capacity,
            Error::InvalidParameter(_) => EntmixStatus::InvalidArgument,
            Error::Positivity(_) => EntmixStatus::Positivity,
            Error::Parse(_) => EntmixStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(EntmixStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(EntmixStatus::InvalidArgument, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EntmixStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EntmixStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EntmixStatus::Panic
        }
    }
}

unsafe fn state_ref<'a>(state: *const EntmixState) -> Result<&'a State, Failure> {
    state.as_ref().map(|s| &s.inner).ok_or_else(|| null("state"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_state(out: *mut *mut EntmixState, state: State) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(EntmixState { inner: state })));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| invalid("string contains a nul byte"))?;
    write(out, c.into_raw())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null("string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid("string is not valid UTF-8"))
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn entmix_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn entmix_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn entmix_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a state handle. Null is ignored.
///
/// # Safety
/// `state` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn entmix_state_free(state: *mut EntmixState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Parses a JSON state.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_state_from_json(json: *const c_char, out: *mut *mut EntmixState) -> EntmixStatus {
    guard(|| {
        let state = State::from_json(read_str(json)?)?;
        write_state(out, state)
    })
}

/// Serializes a state to JSON; free the result with `entmix_string_free`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_state_to_json(state: *const EntmixState, out: *mut *mut c_char) -> EntmixStatus {
    guard(|| write_string(out, state_ref(state)?.to_json()))
}

/// Number of subsystems, local dimension and total dimension.
///
/// # Safety
/// `state` must be a live handle; each output pointer may be null.
#[no_mangle]
pub unsafe extern "C" fn entmix_state_shape(
    state: *const EntmixState,
    n: *mut usize,
    d: *mut usize,
    dim: *mut usize,
) -> EntmixStatus {
    guard(|| {
        let sh = state_ref(state)?.shape();
        for (p, v) in [(n, sh.n()), (d, sh.d()), (dim, sh.dim())] {
            if !p.is_null() {
                p.write(v);
            }
        }
        Ok(())
    })
}

/// Builds a family member from a reference such as `ghz:n=4,sign=-`.
///
/// # Safety
/// `reference` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_construct(reference: *const c_char, out: *mut *mut EntmixState) -> EntmixStatus {
    guard(|| {
        let (family, params) = parse_family_ref(read_str(reference)?)?;
        write_state(out, construct_family(&family, &params)?)
    })
}

/// GHZ state; `sign` is 0 for the default, +1 or -1 for qubits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_ghz(n: usize, d: usize, sign: c_int, out: *mut *mut EntmixState) -> EntmixStatus {
    guard(|| {
        let sign = match sign {
            0 => None,
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            other => return Err(invalid(format!("sign must be -1, 0 or 1, got {other}"))),
        };
        write_state(out, State::Pure(ghz_state(n, d, sign)?))
    })
}

/// Dicke state with `m` excitations on `n` qubits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_dicke(n: usize, m: usize, out: *mut *mut EntmixState) -> EntmixStatus {
    guard(|| write_state(out, State::Pure(dicke_state(DickeParams::new(n, m)?)?)))
}

/// W state on `n` qubits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_w(n: usize, out: *mut *mut EntmixState) -> EntmixStatus {
    guard(|| write_state(out, State::Pure(w_state(n)?)))
}

/// Bell state: 0 psi+, 1 psi-, 2 phi+, 3 phi-.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_bell(which: c_int, out: *mut *mut EntmixState) -> EntmixStatus {
    guard(|| {
        let b = usize::try_from(which)
            .ok()
            .and_then(|i| Bell::ALL.get(i).copied())
            .ok_or_else(|| invalid(format!("Bell index must be 0..=3, got {which}")))?;
        write_state(out, State::Pure(bell_state(b)))
    })
}

/// Størmer two-qutrit state, `0 <= alpha <= 5`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_stormer(alpha: f64, out: *mut *mut EntmixState) -> EntmixStatus {
    guard(|| write_state(out, State::Density(stormer_state(alpha)?)))
}

/// Closed-form purity of the Størmer family, valid for any real `alpha`.
#[no_mangle]
pub extern "C" fn entmix_stormer_purity(alpha: f64) -> f64 {
    stormer_purity(alpha)
}

/// `tr rho^2`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_purity(state: *const EntmixState, out: *mut f64) -> EntmixStatus {
    guard(|| write(out, purity(&state_ref(state)?.density())))
}

/// Whether some one-qudit marginal is less pure than the whole state.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_purity_detected(state: *const EntmixState, out: *mut bool) -> EntmixStatus {
    guard(|| write(out, purity_criterion(&state_ref(state)?.density())?.detected))
}

/// Wootters concurrence of a two-qubit state.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_concurrence(state: *const EntmixState, out: *mut f64) -> EntmixStatus {
    guard(|| write(out, wootters_concurrence(&state_ref(state)?.density())?))
}

/// Smallest eigenvalue of the partial transpose over the 1-based
/// subsystem labels in `labels[0..len]`.
///
/// # Safety
/// `state` must be a live handle; `labels` must point to `len` values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_ppt_min_eigenvalue(
    state: *const EntmixState,
    labels: *const usize,
    len: usize,
    out: *mut f64,
) -> EntmixStatus {
    guard(|| {
        if labels.is_null() && len > 0 {
            return Err(null("labels"));
        }
        let labels = if len == 0 { &[][..] } else { std::slice::from_raw_parts(labels, len) };
        let part = SubsystemSet::new(labels.iter().copied())?;
        write(out, ppt_test(&state_ref(state)?.density(), &part)?.min_eigenvalue)
    })
}

/// Full detection report as JSON; free the result with `entmix_string_free`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entmix_detect_json(state: *const EntmixState, out: *mut *mut c_char) -> EntmixStatus {
    guard(|| {
        let report = detect(&state_ref(state)?.density())?;
        write_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}
