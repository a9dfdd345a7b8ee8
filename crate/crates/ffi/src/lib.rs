//! C ABI for the nls-spectral solver library.
//!
//! Grids and fields are opaque heap-allocated handles; every constructor
//! has a matching `_free` and every fallible call returns an [`NlsStatus`].
//! Complex data crosses the boundary as interleaved `re, im` doubles of
//! length `2 * nls_grid_len(..)`. All panics are caught at the boundary and
//! reported as `NLS_STATUS_INTERNAL_ERROR`.
//!
//! The C header is generated into `include/nls_spectral.h` at build time.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use nls_spectral::baseline::{plane_wave, solve_steps};
use nls_spectral::experiments::{energy, estimate_order, mass, random_hr_data};
use nls_spectral::lowreg::{Method, SchemeParams};
use nls_spectral::norm::{norm, NormKind};
use nls_spectral::{Error, Field, TorusGrid};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NlsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument violated a precondition (dimension, resolution, axis,
    /// wavenumber range, method/grid mismatch, ...).
    InvalidArgument = 2,
    /// A buffer length did not match the grid.
    LengthMismatch = 3,
    /// A panic crossed the boundary; the inputs were left untouched.
    InternalError = 4,
}

/// Opaque torus grid handle.
pub struct NlsGrid(TorusGrid);

/// Opaque field handle (complex state on a grid).
pub struct NlsField(Field);

/// Time-stepping method selector.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub enum NlsMethod {
    LowReg1d = 0,
    LowRegDd = 1,
    Strang = 2,
}

impl From<NlsMethod> for Method {
    fn from(m: NlsMethod) -> Method {
        match m {
            NlsMethod::LowReg1d => Method::LowReg1D,
            NlsMethod::LowRegDd => Method::LowRegDD,
            NlsMethod::Strang => Method::Strang,
        }
    }
}

/// Norm selector; `r` is consulted only for `SOBOLEV_R`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub enum NlsNorm {
    DiscreteL2 = 0,
    DiscreteH1 = 1,
    SobolevR = 2,
}

fn norm_kind(kind: NlsNorm, r: f64) -> NormKind {
    match kind {
        NlsNorm::DiscreteL2 => NormKind::DiscreteL2,
        NlsNorm::DiscreteH1 => NormKind::DiscreteH1,
        NlsNorm::SobolevR => NormKind::SobolevR(r),
    }
}

fn status_of(e: &Error) -> NlsStatus {
    match e {
        Error::SizeMismatch { .. } => NlsStatus::LengthMismatch,
        Error::Io(_) => NlsStatus::InternalError,
        _ => NlsStatus::InvalidArgument,
    }
}

/// Runs `body` with panics converted to `InternalError`.
fn guarded(body: impl FnOnce() -> NlsStatus) -> NlsStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(NlsStatus::InternalError)
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> NlsStatus {
    if out.is_null() {
        return NlsStatus::NullArgument;
    }
    *out = Box::into_raw(Box::new(value));
    NlsStatus::Ok
}

/// Version string of the underlying library; static storage, do not free.
#[no_mangle]
pub extern "C" fn nls_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a `dim`-dimensional torus grid with `n` points per axis
/// (`n` even, ≥ 2). The handle must be released with `nls_grid_free`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn nls_grid_new(
    dim: usize,
    n: usize,
    out: *mut *mut NlsGrid,
) -> NlsStatus {
    guarded(|| match TorusGrid::new(dim, n) {
        Ok(g) => write_out(out, NlsGrid(g)),
        Err(e) => status_of(&e),
    })
}

/// # Safety
/// `grid` must be a handle from `nls_grid_new` not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn nls_grid_free(grid: *mut NlsGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of grid points / coefficients, `N^d`.
///
/// # Safety
/// `grid` must be a live grid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nls_grid_len(grid: *const NlsGrid, out: *mut usize) -> NlsStatus {
    if grid.is_null() || out.is_null() {
        return NlsStatus::NullArgument;
    }
    *out = (*grid).0.len();
    NlsStatus::Ok
}

/// Random initial data of Sobolev regularity `r` from the deterministic
/// seeded coefficient stream.
///
/// # Safety
/// `grid` must be a live grid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_random_hr(
    grid: *const NlsGrid,
    r: f64,
    seed: u64,
    out: *mut *mut NlsField,
) -> NlsStatus {
    if grid.is_null() {
        return NlsStatus::NullArgument;
    }
    let grid = &(*grid).0;
    guarded(|| write_out(out, NlsField(random_hr_data(grid, r, seed))))
}

/// The exact single-mode solution `a e^{i k·x} e^{-i(|k|²+μ|a|²)t}` sampled
/// on the grid. `k` points to `k_len` wavenumbers, one per axis.
///
/// # Safety
/// `grid` must be a live handle, `k` readable for `k_len` entries, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_plane_wave(
    grid: *const NlsGrid,
    amp_re: f64,
    amp_im: f64,
    k: *const i64,
    k_len: usize,
    mu: f64,
    t: f64,
    out: *mut *mut NlsField,
) -> NlsStatus {
    if grid.is_null() || k.is_null() {
        return NlsStatus::NullArgument;
    }
    let grid = &(*grid).0;
    let k = std::slice::from_raw_parts(k, k_len);
    guarded(
        || match plane_wave(Complex64::new(amp_re, amp_im), k, mu, t, grid) {
            Ok(f) => write_out(out, NlsField(f)),
            Err(e) => status_of(&e),
        },
    )
}

/// Build a field from interleaved Fourier coefficients
/// (`re0, im0, re1, im1, ...`, transform order, length `2·N^d`).
///
/// # Safety
/// `grid` live, `coeffs` readable for `len` doubles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_from_coeffs(
    grid: *const NlsGrid,
    coeffs: *const f64,
    len: usize,
    out: *mut *mut NlsField,
) -> NlsStatus {
    if grid.is_null() || coeffs.is_null() {
        return NlsStatus::NullArgument;
    }
    let grid = &(*grid).0;
    if len != 2 * grid.len() {
        return NlsStatus::LengthMismatch;
    }
    let raw = std::slice::from_raw_parts(coeffs, len);
    let values: Vec<Complex64> = raw
        .chunks_exact(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect();
    guarded(|| match Field::from_coeffs(grid, values) {
        Ok(f) => write_out(out, NlsField(f)),
        Err(e) => status_of(&e),
    })
}

/// # Safety
/// `field` must be a live field handle, or null.
#[no_mangle]
pub unsafe extern "C" fn nls_field_free(field: *mut NlsField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_clone(
    field: *const NlsField,
    out: *mut *mut NlsField,
) -> NlsStatus {
    if field.is_null() {
        return NlsStatus::NullArgument;
    }
    let f = (*field).0.clone();
    guarded(|| write_out(out, NlsField(f)))
}

unsafe fn copy_interleaved(values: &[Complex64], out: *mut f64, len: usize) -> NlsStatus {
    if out.is_null() {
        return NlsStatus::NullArgument;
    }
    if len != 2 * values.len() {
        return NlsStatus::LengthMismatch;
    }
    let out = std::slice::from_raw_parts_mut(out, len);
    for (pair, z) in out.chunks_exact_mut(2).zip(values) {
        pair[0] = z.re;
        pair[1] = z.im;
    }
    NlsStatus::Ok
}

/// Copy the Fourier coefficients out as interleaved doubles
/// (length `2·N^d`).
///
/// # Safety
/// `field` live, `out` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nls_field_coeffs(
    field: *const NlsField,
    out: *mut f64,
    len: usize,
) -> NlsStatus {
    if field.is_null() {
        return NlsStatus::NullArgument;
    }
    copy_interleaved((*field).0.coeffs(), out, len)
}

/// Copy the physical grid values out as interleaved doubles
/// (length `2·N^d`, flat row-major order).
///
/// # Safety
/// `field` live, `out` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nls_field_physical(
    field: *const NlsField,
    out: *mut f64,
    len: usize,
) -> NlsStatus {
    if field.is_null() {
        return NlsStatus::NullArgument;
    }
    guarded(|| copy_interleaved(&(*field).0.to_physical(), out, len))
}

/// Advance `field` by `nsteps` steps of the selected method and return the
/// result as a new handle (`nsteps = 1` is a single step).
///
/// # Safety
/// `field` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_solve(
    field: *const NlsField,
    method: NlsMethod,
    tau: f64,
    mu: f64,
    nsteps: u64,
    out: *mut *mut NlsField,
) -> NlsStatus {
    if field.is_null() {
        return NlsStatus::NullArgument;
    }
    let u0 = &(*field).0;
    guarded(|| {
        let p = match SchemeParams::new(tau, mu, method.into()) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        match solve_steps(u0, &p, nsteps as usize) {
            Ok(f) => write_out(out, NlsField(f)),
            Err(e) => status_of(&e),
        }
    })
}

/// One step of the selected method.
///
/// # Safety
/// `field` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_step(
    field: *const NlsField,
    method: NlsMethod,
    tau: f64,
    mu: f64,
    out: *mut *mut NlsField,
) -> NlsStatus {
    nls_solve(field, method, tau, mu, 1, out)
}

/// Norm of a field; `r` is used only for the Sobolev norm.
///
/// # Safety
/// `field` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_norm(
    field: *const NlsField,
    kind: NlsNorm,
    r: f64,
    out: *mut f64,
) -> NlsStatus {
    if field.is_null() || out.is_null() {
        return NlsStatus::NullArgument;
    }
    let f = &(*field).0;
    guarded(|| {
        *out = norm(f, norm_kind(kind, r));
        NlsStatus::Ok
    })
}

/// Norm of the difference of two fields on the same grid.
///
/// # Safety
/// `a`, `b` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_distance(
    a: *const NlsField,
    b: *const NlsField,
    kind: NlsNorm,
    r: f64,
    out: *mut f64,
) -> NlsStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return NlsStatus::NullArgument;
    }
    let (a, b) = (&(*a).0, &(*b).0);
    if a.same_grid(b).is_err() {
        return NlsStatus::InvalidArgument;
    }
    guarded(|| {
        *out = norm(&(a - b), norm_kind(kind, r));
        NlsStatus::Ok
    })
}

/// Total energy `(2π)^{-d} ∫ (|∇u|² + (μ/2)|u|⁴) dx`.
///
/// # Safety
/// `field` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_energy(
    field: *const NlsField,
    mu: f64,
    out: *mut f64,
) -> NlsStatus {
    if field.is_null() || out.is_null() {
        return NlsStatus::NullArgument;
    }
    let f = &(*field).0;
    guarded(|| {
        *out = energy(f, mu);
        NlsStatus::Ok
    })
}

/// Mass `(2π)^{-d} ∫ |u|² dx`.
///
/// # Safety
/// `field` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_mass(field: *const NlsField, out: *mut f64) -> NlsStatus {
    if field.is_null() || out.is_null() {
        return NlsStatus::NullArgument;
    }
    let f = &(*field).0;
    guarded(|| {
        *out = mass(f);
        NlsStatus::Ok
    })
}

/// Log-log order fit over `(taus[i], errors[i])` samples, with roundoff
/// floor and saturation filtering. `out_reliable` is non-zero when at least
/// three monotone points survive.
///
/// # Safety
/// `taus` and `errors` readable for `len` doubles; `out_order` and
/// `out_reliable` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_estimate_order(
    taus: *const f64,
    errors: *const f64,
    len: usize,
    out_order: *mut f64,
    out_reliable: *mut i32,
) -> NlsStatus {
    if taus.is_null() || errors.is_null() || out_order.is_null() || out_reliable.is_null() {
        return NlsStatus::NullArgument;
    }
    if len < 2 {
        return NlsStatus::InvalidArgument;
    }
    let taus = std::slice::from_raw_parts(taus, len);
    let errors = std::slice::from_raw_parts(errors, len);
    let points: Vec<(f64, f64)> = taus.iter().copied().zip(errors.iter().copied()).collect();
    guarded(|| {
        let fit = estimate_order(&points);
        *out_order = fit.order;
        *out_reliable = fit.reliable as i32;
        NlsStatus::Ok
    })
}
