//! C ABI over `eostrata`.
//!
//! Every fallible function returns an [`EoStatus`]; on failure a message is
//! kept per thread and can be read with [`eo_last_error`]. Objects are opaque
//! handles released with their `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eostrata::dieudonne::{eo_type, DieudonneModule};
use eostrata::dlclassify::{census, classify_fine, Census, DEFAULT_TWIST};
use eostrata::gf::FieldCtx;
use eostrata::symplectic::{Subspace, SymplecticSpace};
use eostrata::weyl::WeylElement;
use eostrata::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    CheckFailed = 4,
    Internal = 5,
}

/// An element of the Weyl group `W_n`.
pub struct EoWeyl(WeylElement);

/// The result of a point census.
pub struct EoCensus(Census);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> EoStatus {
    match e {
        Error::Invariant(_) | Error::NoStabilization(_) | Error::RelposMatch { .. } => EoStatus::CheckFailed,
        _ => EoStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), EoStatus>) -> EoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EoStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            EoStatus::Internal
        }
    }
}

fn lift<T>(r: Result<T, Error>) -> Result<T, EoStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T) -> Result<(), EoStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(EoStatus::NullPointer);
    }
    Ok(())
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn eo_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let bytes = e.borrow();
        let bytes = bytes.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Static, NUL-terminated version string.
#[no_mangle]
pub extern "C" fn eo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds a Weyl element from its one-line form `values[0..len]` (values 1-based).
///
/// # Safety
/// `values` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_weyl_from_one_line(values: *const usize, len: usize, out: *mut *mut EoWeyl) -> EoStatus {
    guard(|| {
        non_null(out)?;
        if len > 0 {
            non_null(values)?;
        }
        let v = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
        let w = lift(WeylElement::from_one_line(v))?;
        *out = Box::into_raw(Box::new(EoWeyl(w)));
        Ok(())
    })
}

/// # Safety
/// `w` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eo_weyl_free(w: *mut EoWeyl) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn eo_weyl_rank(w: *const EoWeyl) -> usize {
    if w.is_null() { 0 } else { (*w).0.rank() }
}

/// # Safety
/// `w` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn eo_weyl_length(w: *const EoWeyl) -> usize {
    if w.is_null() { 0 } else { (*w).0.length() }
}

/// Writes the `2n` one-line values into `out[0..cap]`.
///
/// # Safety
/// `w` must be a live handle; `out` must point to `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn eo_weyl_one_line(w: *const EoWeyl, out: *mut usize, cap: usize) -> EoStatus {
    guard(|| {
        non_null(w)?;
        let v = (*w).0.one_line();
        if cap < v.len() {
            set_error(format!("need room for {} values", v.len()));
            return Err(EoStatus::BufferTooSmall);
        }
        if !v.is_empty() {
            non_null(out)?;
            ptr::copy_nonoverlapping(v.as_ptr(), out, v.len());
        }
        Ok(())
    })
}

/// The lift of `w ∈ W_c` to `W_g` fixing `1..=g-c`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_weyl_lift(w: *const EoWeyl, g: usize, out: *mut *mut EoWeyl) -> EoStatus {
    guard(|| {
        non_null(w)?;
        non_null(out)?;
        let l = lift((*w).0.r_map_inv(g))?;
        *out = Box::into_raw(Box::new(EoWeyl(l)));
        Ok(())
    })
}

/// Runs the census over `F_{p^{2m}}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_census_run(c: usize, p: u32, m: u32, out: *mut *mut EoCensus) -> EoStatus {
    guard(|| {
        non_null(out)?;
        let r = lift(census(c, p, m))?;
        *out = Box::into_raw(Box::new(EoCensus(r)));
        Ok(())
    })
}

/// # Safety
/// `cen` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eo_census_free(cen: *mut EoCensus) {
    if !cen.is_null() {
        drop(Box::from_raw(cen));
    }
}

/// Number of records (one per stratum label).
///
/// # Safety
/// `cen` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn eo_census_len(cen: *const EoCensus) -> usize {
    if cen.is_null() { 0 } else { (*cen).0.records.len() }
}

/// True when every per-point consistency check passed.
///
/// # Safety
/// `cen` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn eo_census_checks_pass(cen: *const EoCensus) -> bool {
    !cen.is_null() && (*cen).0.checks.all_pass()
}

/// Count and label of record `idx`. `label` may be null.
///
/// # Safety
/// `cen` must be a live handle; `count` must be writable; `label` null or writable.
#[no_mangle]
pub unsafe extern "C" fn eo_census_record(
    cen: *const EoCensus,
    idx: usize,
    count: *mut u64,
    label: *mut *mut EoWeyl,
) -> EoStatus {
    guard(|| {
        non_null(cen)?;
        non_null(count)?;
        let cen = &*cen;
        let Some(r) = cen.0.records.get(idx) else {
            set_error(format!("record index {idx} out of range"));
            return Err(EoStatus::InvalidArgument);
        };
        *count = r.count;
        if !label.is_null() {
            *label = Box::into_raw(Box::new(EoWeyl(r.label.clone())));
        }
        Ok(())
    })
}

unsafe fn lagrangian_from_codes(p: u32, k: u32, c: usize, codes: *const u32) -> Result<(SymplecticSpace, Subspace), EoStatus> {
    let field = lift(FieldCtx::new(p, k))?;
    let d = 2 * c;
    if c > 0 {
        non_null(codes)?;
    }
    let raw = if c == 0 { &[][..] } else { std::slice::from_raw_parts(codes, c * d) };
    let rows = raw
        .chunks(d.max(1))
        .map(|r| r.iter().map(|&x| field.elem(x as u64)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>();
    let u = lift(Subspace::span(&field, d, lift(rows)?))?;
    Ok((SymplecticSpace::standard(&field, c), u))
}

/// Fine label of the span of `c` rows of length `2c` (row-major element codes
/// in `F_{p^k}`), which must be Lagrangian for the standard form.
///
/// # Safety
/// `codes` must point to `2c²` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_classify_lagrangian(
    p: u32,
    k: u32,
    c: usize,
    codes: *const u32,
    out: *mut *mut EoWeyl,
) -> EoStatus {
    guard(|| {
        non_null(out)?;
        let (space, u) = lagrangian_from_codes(p, k, c, codes)?;
        let label = lift(classify_fine(&space, &u, DEFAULT_TWIST))?;
        *out = Box::into_raw(Box::new(EoWeyl(label.w)));
        Ok(())
    })
}

/// Ekedahl–Oort type in `W_g` of the Dieudonné module built from the Lagrangian.
///
/// # Safety
/// As for [`eo_classify_lagrangian`].
#[no_mangle]
pub unsafe extern "C" fn eo_type_of_lagrangian(
    p: u32,
    k: u32,
    c: usize,
    g: usize,
    codes: *const u32,
    out: *mut *mut EoWeyl,
) -> EoStatus {
    guard(|| {
        non_null(out)?;
        let (_, u) = lagrangian_from_codes(p, k, c, codes)?;
        let m = lift(DieudonneModule::from_lagrangian(&u, g))?;
        let eo = lift(eo_type(&m))?;
        *out = Box::into_raw(Box::new(EoWeyl(eo.w)));
        Ok(())
    })
}
