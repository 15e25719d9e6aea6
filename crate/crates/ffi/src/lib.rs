//! C ABI over `radcomp`.
//!
//! Every fallible call returns a [`RadcompStatus`] and writes its result
//! through an out-pointer. Handles are opaque and must be released with the
//! matching `_free` function; strings returned by the library are released
//! with [`radcomp_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use radcomp::decide::{verify_artifact, Decision, Prover, ProverConfig};
use radcomp::{Error, RingParams};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadcompStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidParams = 2,
    Parse = 3,
    NoComplement = 4,
    ComplementExists = 5,
    NotCertifiable = 6,
    SearchLimit = 7,
    Internal = 8,
}

impl From<&Error> for RadcompStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParams(_) => RadcompStatus::InvalidParams,
            Error::Parse(_) | Error::UnknownFixture(_) => RadcompStatus::Parse,
            Error::NoComplement { .. } => RadcompStatus::NoComplement,
            Error::ComplementExists { .. } => RadcompStatus::ComplementExists,
            Error::NotCertifiable { .. } => RadcompStatus::NotCertifiable,
            Error::SearchSpaceTooLarge { .. }
            | Error::CosetOverflow { .. }
            | Error::Overflow(_) => RadcompStatus::SearchLimit,
            _ => RadcompStatus::Internal,
        }
    }
}

/// Ring parameters `(p, n, k)`.
pub struct RadcompParams(RingParams);

/// A decision with its evidence.
pub struct RadcompDecision(Decision);

fn status_of<T>(r: Result<T, Error>, out: impl FnOnce(T)) -> RadcompStatus {
    match r {
        Ok(v) => {
            out(v);
            RadcompStatus::Ok
        }
        Err(e) => RadcompStatus::from(&e),
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn write_json(json: serde_json::Result<String>, out: *mut *mut c_char) -> RadcompStatus {
    match json {
        Ok(s) => {
            *out = to_c_string(s);
            RadcompStatus::Ok
        }
        Err(_) => RadcompStatus::Internal,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn radcomp_status_message(status: RadcompStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        RadcompStatus::Ok => c"ok",
        RadcompStatus::NullArgument => c"null argument",
        RadcompStatus::InvalidParams => c"invalid ring parameters",
        RadcompStatus::Parse => c"could not parse input",
        RadcompStatus::NoComplement => c"no complement exists",
        RadcompStatus::ComplementExists => c"a complement exists",
        RadcompStatus::NotCertifiable => c"nonexistence is citation-only for these parameters",
        RadcompStatus::SearchLimit => c"search or enumeration limit exceeded",
        RadcompStatus::Internal => c"internal error",
    };
    msg.as_ptr()
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn radcomp_params_new(
    p: u64,
    n: usize,
    k: u32,
    out: *mut *mut RadcompParams,
) -> RadcompStatus {
    if out.is_null() {
        return RadcompStatus::NullArgument;
    }
    status_of(RingParams::new(p, n, k), |ps| {
        *out = Box::into_raw(Box::new(RadcompParams(ps)));
    })
}

/// # Safety
/// `params` must be null or a handle from [`radcomp_params_new`] not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn radcomp_params_free(params: *mut RadcompParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radcomp_decide(
    params: *const RadcompParams,
    out: *mut *mut RadcompDecision,
) -> RadcompStatus {
    if params.is_null() || out.is_null() {
        return RadcompStatus::NullArgument;
    }
    let mut prover = Prover::new(ProverConfig::default());
    status_of(prover.decide(&(*params).0), |d| {
        *out = Box::into_raw(Box::new(RadcompDecision(d)));
    })
}

/// # Safety
/// `decision` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn radcomp_decision_exists(decision: *const RadcompDecision) -> bool {
    !decision.is_null() && (*decision).0.exists
}

/// Justification code as a static string, or null for a null handle.
///
/// # Safety
/// `decision` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn radcomp_decision_justification(
    decision: *const RadcompDecision,
) -> *const c_char {
    if decision.is_null() {
        return ptr::null();
    }
    let code: &'static CStr = match (*decision).0.justification.code() {
        "TrivialK1" => c"TrivialK1",
        "ScalarTeichmuller" => c"ScalarTeichmuller",
        "ExplicitSection" => c"ExplicitSection",
        "BruteWitness" => c"BruteWitness",
        "ObstructionUNSAT+LemmaReduction" => c"ObstructionUNSAT+LemmaReduction",
        _ => c"TheoremTable",
    };
    code.as_ptr()
}

/// # Safety
/// `decision` must be a live handle; `out` must be writable. The string is
/// released with [`radcomp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn radcomp_decision_to_json(
    decision: *const RadcompDecision,
    out: *mut *mut c_char,
) -> RadcompStatus {
    if decision.is_null() || out.is_null() {
        return RadcompStatus::NullArgument;
    }
    write_json(serde_json::to_string(&(*decision).0), out)
}

/// # Safety
/// `decision` must be null or a handle from [`radcomp_decide`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn radcomp_decision_free(decision: *mut RadcompDecision) {
    if !decision.is_null() {
        drop(Box::from_raw(decision));
    }
}

/// Verified section as JSON.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radcomp_witness_json(
    params: *const RadcompParams,
    out: *mut *mut c_char,
) -> RadcompStatus {
    if params.is_null() || out.is_null() {
        return RadcompStatus::NullArgument;
    }
    match Prover::new(ProverConfig::default()).witness(&(*params).0) {
        Ok(w) => write_json(serde_json::to_string(&w), out),
        Err(e) => RadcompStatus::from(&e),
    }
}

/// Nonexistence certificate as JSON.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radcomp_certify_no_json(
    params: *const RadcompParams,
    out: *mut *mut c_char,
) -> RadcompStatus {
    if params.is_null() || out.is_null() {
        return RadcompStatus::NullArgument;
    }
    match Prover::new(ProverConfig::default()).certify_no(&(*params).0, None) {
        Ok(c) => write_json(serde_json::to_string(&c), out),
        Err(e) => RadcompStatus::from(&e),
    }
}

/// Re-checks a witness, certificate or decision given as JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radcomp_verify_json(
    json: *const c_char,
    valid: *mut bool,
) -> RadcompStatus {
    if json.is_null() || valid.is_null() {
        return RadcompStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return RadcompStatus::Parse;
    };
    status_of(verify_artifact(text), |r| *valid = r.valid)
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn radcomp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
