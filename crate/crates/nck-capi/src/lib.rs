//! C ABI for the nck toolkit.
//!
//! Conventions: fallible calls return an [`NckStatus`] and write results
//! through out-pointers; point sets and families are opaque handles freed
//! by the paired `_free` function; strings returned by the library are
//! freed with [`nck_string_free`]. [`nck_last_error_message`] returns a
//! thread-local description of the most recent failure, valid until the
//! next failing call on the same thread.
//!
//! The companion header `include/nck.h` is generated at build time.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nck::function_space::Family;
use nck::geometry::PointSet;

/// Result codes for every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NckStatus {
    NckOk = 0,
    NckNullPointer = 1,
    NckInvalidUtf8 = 2,
    NckInvalidInput = 3,
    NckConstructionFailed = 4,
    NckParseError = 5,
    NckInternalError = 6,
}

/// Opaque finite point set in R^N.
pub struct NckPointSet {
    inner: PointSet,
}

/// Opaque family of piecewise-linear paths on a shared grid.
pub struct NckFamily {
    inner: Family,
}

/// Jung inequality report over one point set.
#[repr(C)]
pub struct NckJungReport {
    pub diameter: f64,
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub margin: f64,
    /// 1 when the two-sided bound holds within tolerance, 0 otherwise.
    pub pass: c_int,
}

/// Two-sided bracket certified by one net construction.
#[repr(C)]
pub struct NckBracket {
    pub omega_hat: f64,
    pub lower: f64,
    pub upper: f64,
    pub achieved: f64,
    pub epsilon: f64,
    /// 1 when the realized covering radius meets the bound, 0 otherwise.
    pub pass: c_int,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: NckStatus, message: impl Into<Vec<u8>>) -> NckStatus {
    let message = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
    status
}

fn fail_from(err: nck::Error) -> NckStatus {
    use nck::Error::*;
    let status = match err {
        AlphaTooSmall { .. } | QuantizationRange { .. } => NckStatus::NckConstructionFailed,
        Parse(_) | Io(_) => NckStatus::NckParseError,
        Internal(_) => NckStatus::NckInternalError,
        _ => NckStatus::NckInvalidInput,
    };
    fail(status, err.to_string())
}

fn guarded(body: impl FnOnce() -> NckStatus) -> NckStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(NckStatus::NckInternalError, "panic across the C boundary"),
    }
}

/// Message for the most recent failure on this thread. Never null; the
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nck_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a point set from `n_points` rows of `dim` coordinates, row-major.
///
/// # Safety
/// `coords` must point to `dim * n_points` readable doubles and `out` must
/// be a valid location for a handle.
#[no_mangle]
pub unsafe extern "C" fn nck_point_set_new(
    dim: usize,
    coords: *const f64,
    n_points: usize,
    out: *mut *mut NckPointSet,
) -> NckStatus {
    guarded(|| {
        if coords.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        let flat = unsafe { std::slice::from_raw_parts(coords, dim.saturating_mul(n_points)) };
        let points = flat.chunks(dim.max(1)).map(|c| c.to_vec()).collect();
        match PointSet::new(dim, points) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(NckPointSet { inner })) };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}

/// # Safety
/// `ps` must be a handle from [`nck_point_set_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nck_point_set_free(ps: *mut NckPointSet) {
    if !ps.is_null() {
        drop(unsafe { Box::from_raw(ps) });
    }
}

/// # Safety
/// `ps` must be a live point-set handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_diameter(ps: *const NckPointSet, out: *mut f64) -> NckStatus {
    guarded(|| {
        if ps.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        let ps = unsafe { &*ps };
        unsafe { *out = nck::geometry::diameter(&ps.inner) };
        NckStatus::NckOk
    })
}

/// Minimum enclosing ball. `center_out` receives `dim` doubles.
///
/// # Safety
/// `ps` must be a live point-set handle; `center_out` must have room for
/// the set's dimension; `radius_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_chebyshev_ball(
    ps: *const NckPointSet,
    tol: f64,
    seed: u64,
    center_out: *mut f64,
    radius_out: *mut f64,
) -> NckStatus {
    guarded(|| {
        if ps.is_null() || center_out.is_null() || radius_out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        let ps = unsafe { &*ps };
        match nck::geometry::chebyshev_ball_seeded(&ps.inner, tol, seed) {
            Ok(ball) => {
                let center = unsafe { std::slice::from_raw_parts_mut(center_out, ps.inner.dim) };
                center.copy_from_slice(&ball.center);
                unsafe { *radius_out = ball.radius };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}

/// Diameter, Chebyshev radius, and the two-sided Jung bound check.
///
/// # Safety
/// `ps` must be a live point-set handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_jung_report(
    ps: *const NckPointSet,
    tol: f64,
    out: *mut NckJungReport,
) -> NckStatus {
    guarded(|| {
        if ps.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        let ps = unsafe { &*ps };
        match nck::geometry::jung_report(&ps.inner, tol) {
            Ok(r) => {
                unsafe {
                    *out = NckJungReport {
                        diameter: r.diameter,
                        radius: r.radius,
                        lower: r.lower,
                        upper: r.upper,
                        margin: r.margin,
                        pass: r.pass as c_int,
                    }
                };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}

/// Parses a family from its JSON document form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_family_from_json(
    json: *const c_char,
    out: *mut *mut NckFamily,
) -> NckStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => return fail(NckStatus::NckInvalidUtf8, "family JSON is not UTF-8"),
        };
        match nck::formats::family_from_json(text) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(NckFamily { inner })) };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}

/// Serializes a family to JSON. Free the string with [`nck_string_free`].
///
/// # Safety
/// `fam` must be a live family handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_family_to_json(
    fam: *const NckFamily,
    out: *mut *mut c_char,
) -> NckStatus {
    guarded(|| {
        if fam.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        let fam = unsafe { &*fam };
        let json = nck::formats::family_to_json(&fam.inner);
        match CString::new(json) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                NckStatus::NckOk
            }
            Err(_) => fail(NckStatus::NckInternalError, "JSON contained a NUL byte"),
        }
    })
}

/// # Safety
/// `fam` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nck_family_free(fam: *mut NckFamily) {
    if !fam.is_null() {
        drop(unsafe { Box::from_raw(fam) });
    }
}

/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `fam` must be a live family handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_family_dim(fam: *const NckFamily, out: *mut usize) -> NckStatus {
    guarded(|| {
        if fam.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        unsafe { *out = (*fam).inner.dim() };
        NckStatus::NckOk
    })
}

/// # Safety
/// `fam` must be a live family handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_family_len(fam: *const NckFamily, out: *mut usize) -> NckStatus {
    guarded(|| {
        if fam.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        unsafe { *out = (*fam).inner.len() };
        NckStatus::NckOk
    })
}

/// Family modulus of continuity at one scale.
///
/// # Safety
/// `fam` must be a live family handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_modulus_omega(
    fam: *const NckFamily,
    delta: f64,
    out: *mut f64,
) -> NckStatus {
    guarded(|| {
        if fam.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        match nck::moduli::modulus_omega(unsafe { &(*fam).inner }, delta) {
            Ok(v) => {
                unsafe { *out = v };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}

/// Covering radius of `net` over `fam`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_net_radius(
    fam: *const NckFamily,
    net: *const NckFamily,
    out: *mut f64,
) -> NckStatus {
    guarded(|| {
        if fam.is_null() || net.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        match nck::moduli::net_radius(unsafe { &(*fam).inner }, unsafe { &(*net).inner }) {
            Ok(v) => {
                unsafe { *out = v };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}

/// Builds the certified epsilon-net; the result is a new family handle.
///
/// # Safety
/// `fam` must be a live family handle; `net_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_build_net(
    fam: *const NckFamily,
    delta: f64,
    alpha: f64,
    epsilon: f64,
    seed: u64,
    tol: f64,
    net_out: *mut *mut NckFamily,
) -> NckStatus {
    guarded(|| {
        if fam.is_null() || net_out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        match nck::net_builder::build_net(unsafe { &(*fam).inner }, delta, alpha, epsilon, seed, tol)
        {
            Ok((net, _certs)) => {
                unsafe { *net_out = Box::into_raw(Box::new(NckFamily { inner: net })) };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}

/// Measures `omega(delta)`, builds the net, and reports the two-sided
/// bracket with the realized covering radius.
///
/// # Safety
/// `fam` must be a live family handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nck_theorem_bracket(
    fam: *const NckFamily,
    delta: f64,
    epsilon: f64,
    seed: u64,
    tol: f64,
    out: *mut NckBracket,
) -> NckStatus {
    guarded(|| {
        if fam.is_null() || out.is_null() {
            return fail(NckStatus::NckNullPointer, "null pointer argument");
        }
        match nck::moduli::theorem_bracket(unsafe { &(*fam).inner }, delta, epsilon, seed, tol) {
            Ok(b) => {
                unsafe {
                    *out = NckBracket {
                        omega_hat: b.omega_hat,
                        lower: b.lower,
                        upper: b.upper,
                        achieved: b.achieved,
                        epsilon: b.epsilon,
                        pass: b.pass as c_int,
                    }
                };
                NckStatus::NckOk
            }
            Err(e) => fail_from(e),
        }
    })
}
