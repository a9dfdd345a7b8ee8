//! Fourier multiplier operators on torus fields.
//!
//! Every operator here is diagonal in coefficient space. The Laplacian acts
//! on mode `k` as `-|k|²`, so the free group `e^{itΔ}` multiplies the
//! coefficient by `e^{-it|k|²}`. The Nyquist mode `k = -N/2` is retained and
//! treated like any other wavenumber.

use num_complex::Complex64;

use crate::error::Result;
use crate::field::Field;

/// Free flow `e^{itΔ}`: each coefficient is multiplied by `e^{-it|k|²}`.
pub fn free_propagate(f: &Field, t: f64) -> Field {
    let grid = f.grid().clone();
    f.map_indexed(|flat, c| c * Complex64::from_polar(1.0, -t * grid.ksq(flat)))
}

/// Partial free flow `e^{it∂_j²}` along a single axis: multiplies by
/// `e^{-it k_j²}`.
pub fn propagate_axis(f: &Field, t: f64, axis: usize) -> Result<Field> {
    let grid = f.grid().clone();
    grid.check_axis(axis)?;
    Ok(f.map_indexed(|flat, c| {
        let kj = grid.axis_wavenumber(flat, axis) as f64;
        c * Complex64::from_polar(1.0, -t * kj * kj)
    }))
}

/// Regularized inverse derivative `∂_j^{-1}`: divides by `i k_j` and zeroes
/// the `k_j = 0` slab.
pub fn inv_derivative(f: &Field, axis: usize) -> Result<Field> {
    let grid = f.grid().clone();
    grid.check_axis(axis)?;
    Ok(f.map_indexed(|flat, c| {
        let kj = grid.axis_wavenumber(flat, axis);
        if kj == 0 {
            Complex64::default()
        } else {
            c / Complex64::new(0.0, kj as f64)
        }
    }))
}

/// Spectral derivative `∂_j`: multiplies by `i k_j`.
pub fn spectral_derivative(f: &Field, axis: usize) -> Result<Field> {
    let grid = f.grid().clone();
    grid.check_axis(axis)?;
    Ok(f.map_indexed(|flat, c| {
        let kj = grid.axis_wavenumber(flat, axis);
        c * Complex64::new(0.0, kj as f64)
    }))
}

/// Keep only the `k_j = 0` slab: the zeroth coefficient of the partial
/// Fourier transform in direction `axis`. The result is constant along that
/// axis.
pub fn zero_mode_slice(f: &Field, axis: usize) -> Result<Field> {
    let grid = f.grid().clone();
    grid.check_axis(axis)?;
    Ok(f.map_indexed(|flat, c| {
        if grid.axis_wavenumber(flat, axis) == 0 {
            c
        } else {
            Complex64::default()
        }
    }))
}

/// Switch point between the series and closed-form evaluation of `φ₁`.
const PHI1_SERIES_THRESHOLD: f64 = 1e-4;

/// `φ₁(z) = (e^z - 1)/z`, with `φ₁(0) = 1`.
///
/// Below `|z| = 1e-4` the Taylor polynomial `1 + z/2 + z²/6 + z³/24` is
/// used (its truncation error there is below 1e-18); otherwise the closed
/// form, with `e^z - 1` evaluated cancellation-free so the two branches
/// agree across the switch.
pub fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < PHI1_SERIES_THRESHOLD {
        let one = Complex64::new(1.0, 0.0);
        one + z * (one / 2.0 + z * (one / 6.0 + z / 24.0))
    } else {
        exp_m1(z) / z
    }
}

/// `e^z - 1` without the cancellation of the naive form near zero:
/// `e^x cos y - 1 = expm1(x)·cos y - 2 sin²(y/2)`.
fn exp_m1(z: Complex64) -> Complex64 {
    let ex = z.re.exp_m1();
    let (sin_y, cos_y) = z.im.sin_cos();
    let half = (z.im / 2.0).sin();
    Complex64::new(ex * cos_y - 2.0 * half * half, (ex + 1.0) * sin_y)
}

/// Applies `φ₁(-2iτΔ)` as a Fourier multiplier: the coefficient at `k` is
/// multiplied by `φ₁(2iτ|k|²)`; the zero mode is untouched.
pub fn phi1_apply(f: &Field, tau: f64) -> Field {
    assert!(tau >= 0.0, "phi1_apply requires tau >= 0");
    let grid = f.grid().clone();
    f.map_indexed(|flat, c| c * phi1(Complex64::new(0.0, 2.0 * tau * grid.ksq(flat))))
}
