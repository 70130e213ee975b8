//! C ABI over `g2gen`. Curves and generator sets are opaque handles owned by
//! the caller and released with their `_free` function. Every fallible call
//! returns a [`G2Status`]; the message of the most recent error on the
//! calling thread is available from [`g2gen_last_error`]. Strings returned
//! through `out` parameters are NUL-terminated JSON and must be released
//! with [`g2gen_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use g2gen::report::{self, CurveFile, GeneratorReport, Report};
use g2gen::zeta::{classify_weil, weil_polynomial};
use g2gen::{Curve, Error};

/// Status codes. The nonzero values below 6 match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2Status {
    Ok = 0,
    /// The randomized search ran out of attempts.
    Failure = 2,
    /// The input is outside the supported class or violates a precondition.
    Precondition = 3,
    /// Malformed input: bad JSON, singular curve, non-prime `q`.
    Input = 4,
    /// An internal check failed.
    Internal = 5,
    /// A required pointer argument was null.
    NullPointer = 6,
    /// The library panicked; the handle arguments should not be reused.
    Panic = 7,
}

impl From<&Error> for G2Status {
    fn from(e: &Error) -> Self {
        match e.exit_code() {
            2 => G2Status::Failure,
            3 => G2Status::Precondition,
            4 => G2Status::Input,
            _ => G2Status::Internal,
        }
    }
}

/// A validated curve `y^2 = f(x)` over `F_q`.
pub struct G2Curve(Curve);

/// Four generators of `J[l]` with their verification data.
pub struct G2GeneratorSet(GeneratorReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), (G2Status, String)>) -> G2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => G2Status::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside g2gen".into());
            G2Status::Panic
        }
    }
}

fn lib<T>(r: g2gen::Result<T>) -> Result<T, (G2Status, String)> {
    r.map_err(|e| (G2Status::from(&e), e.to_string()))
}

fn null() -> (G2Status, String) {
    (G2Status::NullPointer, "null pointer argument".into())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, (G2Status, String)> {
    p.as_ref().ok_or_else(null)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (G2Status, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| (G2Status::Input, e.to_string()))
}

fn json_out<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> Result<(), (G2Status, String)> {
    let text = serde_json::to_string(value).map_err(|e| (G2Status::Internal, e.to_string()))?;
    let c = CString::new(text).map_err(|e| (G2Status::Internal, e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn store<T>(value: T, out: *mut *mut T) {
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Message of the last error raised on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn g2gen_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn g2gen_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a curve from `q` and the six little-endian coefficients of `f`.
///
/// # Safety
/// `f` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_curve_new(q: u64, f: *const i64, len: usize, out: *mut *mut G2Curve) -> G2Status {
    guard(|| {
        if f.is_null() || out.is_null() {
            return Err(null());
        }
        let coeffs = std::slice::from_raw_parts(f, len);
        let file = CurveFile { q, f: coeffs.to_vec() };
        store(G2Curve(lib(file.curve())?), out);
        Ok(())
    })
}

/// Builds a curve from `{"q": ..., "f": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_curve_from_json(json: *const c_char, out: *mut *mut G2Curve) -> G2Status {
    guard(|| {
        let text = str_arg(json)?;
        if out.is_null() {
            return Err(null());
        }
        let curve = lib(CurveFile::parse(text).and_then(|c| c.curve()))?;
        store(G2Curve(curve), out);
        Ok(())
    })
}

/// # Safety
/// `curve` must come from this library and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn g2gen_curve_free(curve: *mut G2Curve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Writes the group order `P(1)` of `J(F_q)`.
///
/// # Safety
/// `curve` must be a live handle and `order` writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_curve_order(curve: *const G2Curve, order: *mut u64) -> G2Status {
    guard(|| {
        let curve = borrow(curve)?;
        if order.is_null() {
            return Err(null());
        }
        let p1 = lib(weil_polynomial(&curve.0))?.at_one();
        *order = u64::try_from(p1).map_err(|e| (G2Status::Internal, e.to_string()))?;
        Ok(())
    })
}

/// The `info` report as JSON. `ell = 0` omits the data modulo `l`.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_info_json(curve: *const G2Curve, ell: u64, out: *mut *mut c_char) -> G2Status {
    guard(|| {
        let curve = borrow(curve)?;
        if out.is_null() {
            return Err(null());
        }
        let result = lib(report::info(&curve.0, (ell != 0).then_some(ell)))?;
        json_out(&Report::new("info", &[], None, result), out)
    })
}

/// The classification of `(curve, l)` as JSON.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_classify_json(curve: *const G2Curve, ell: u64, out: *mut *mut c_char) -> G2Status {
    guard(|| {
        let curve = borrow(curve)?;
        if out.is_null() {
            return Err(null());
        }
        let class = lib(weil_polynomial(&curve.0).and_then(|w| classify_weil(&w, ell)))?;
        json_out(&Report::new("classify", &[], None, class), out)
    })
}

/// Finds and verifies four generators of `J[l]`, drawing `n` fresh samples
/// per search loop from an RNG seeded with `seed`.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_generators(
    curve: *const G2Curve,
    ell: u64,
    n: usize,
    seed: u64,
    out: *mut *mut G2GeneratorSet,
) -> G2Status {
    guard(|| {
        let curve = borrow(curve)?;
        if out.is_null() {
            return Err(null());
        }
        store(G2GeneratorSet(lib(report::generators(&curve.0, ell, n, seed))?), out);
        Ok(())
    })
}

/// # Safety
/// `set` must come from this library and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn g2gen_generators_free(set: *mut G2GeneratorSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// The Pfaffian of the pairing matrix; nonzero for a basis. Returns 0 for a
/// null handle.
///
/// # Safety
/// `set` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn g2gen_generators_pfaffian(set: *const G2GeneratorSet) -> u64 {
    set.as_ref().map_or(0, |s| s.0.pfaffian)
}

/// Degree over `F_q` of the field the generators are written in.
///
/// # Safety
/// `set` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn g2gen_generators_ambient_degree(set: *const G2GeneratorSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.ambient_degree)
}

/// Copies the Frobenius matrix (`which = 0`) or the pairing exponent matrix
/// (`which = 1`) into `out[16]`, row-major.
///
/// # Safety
/// `set` must be a live handle and `out` must hold 16 values.
#[no_mangle]
pub unsafe extern "C" fn g2gen_generators_matrix(set: *const G2GeneratorSet, which: u32, out: *mut u64) -> G2Status {
    guard(|| {
        let set = borrow(set)?;
        if out.is_null() {
            return Err(null());
        }
        let m = match which {
            0 => &set.0.frobenius_matrix,
            1 => &set.0.pairing_exponents,
            _ => return Err((G2Status::Input, format!("unknown matrix selector {which}"))),
        };
        let flat: Vec<u64> = m.iter().flatten().copied().collect();
        ptr::copy_nonoverlapping(flat.as_ptr(), out, 16);
        Ok(())
    })
}

/// The full `generators` report as JSON. `input_sha256` hashes the compact
/// curve JSON rather than a file.
///
/// # Safety
/// `set` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_generators_json(set: *const G2GeneratorSet, seed: u64, out: *mut *mut c_char) -> G2Status {
    guard(|| {
        let set = borrow(set)?;
        if out.is_null() {
            return Err(null());
        }
        let input = serde_json::to_vec(&set.0.curve).map_err(|e| (G2Status::Internal, e.to_string()))?;
        json_out(&Report::new("generators", &input, Some(seed), set.0.clone()), out)
    })
}

/// Re-checks a `generators` report. Writes the verification JSON to `out`
/// and returns `Ok` only when the points form a basis, the postconditions
/// hold and the saved matrices match; otherwise `Failure`.
///
/// # Safety
/// `report` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g2gen_verify_json(report: *const c_char, seed: u64, out: *mut *mut c_char) -> G2Status {
    let mut passed = false;
    let status = guard(|| {
        let text = str_arg(report)?;
        if out.is_null() {
            return Err(null());
        }
        let saved: Report<GeneratorReport> =
            serde_json::from_str(text).map_err(|e| (G2Status::Input, e.to_string()))?;
        let result = lib(report::verify(&saved.result, seed))?;
        passed = result.is_basis && result.postconditions_hold && result.matches_report;
        json_out(&Report::new("verify", text.as_bytes(), Some(seed), result), out)
    });
    if status == G2Status::Ok && !passed {
        set_error("report failed verification".into());
        return G2Status::Failure;
    }
    status
}
