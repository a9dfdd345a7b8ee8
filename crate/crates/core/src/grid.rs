//! Discrete torus geometry and the FFT bridge.
//!
//! The torus `[0, 2π)^d` is sampled at `N` equidistant points per axis,
//! `x_j = j·h` with `h = 2π/N`. Fourier coefficients are indexed by the
//! integer wavenumbers `-N/2, …, N/2-1` per axis, stored in transform order
//! `0, 1, …, N/2-1, -N/2, …, -1` (row-major over axes, last axis contiguous).

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Geometry of a cube grid on the d-dimensional torus, with cached FFT plans.
///
/// Cloning is cheap (shared plans). All per-call transform workspace is
/// local, so a grid may be used concurrently from several threads.
#[derive(Clone)]
pub struct TorusGrid {
    dim: usize,
    n: usize,
    len: usize,
    mesh_width: f64,
    /// |k|² per flat coefficient index.
    ksq: Arc<[f64]>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TorusGrid")
            .field("dim", &self.dim)
            .field("n", &self.n)
            .finish()
    }
}

impl PartialEq for TorusGrid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.n == other.n
    }
}
impl Eq for TorusGrid {}

impl TorusGrid {
    /// Build a `dim`-dimensional grid with `n` points per axis (`n` even, ≥ 2).
    pub fn new(dim: usize, n: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidResolution(n));
        }
        let len = n
            .checked_pow(dim as u32)
            .filter(|&l| l.checked_mul(std::mem::size_of::<Complex64>()).is_some())
            .ok_or(Error::GridTooLarge { dim, n })?;

        let mut ksq = vec![0.0; len];
        for (flat, v) in ksq.iter_mut().enumerate() {
            let mut rem = flat;
            let mut acc = 0i64;
            for _ in 0..dim {
                let k = index_to_wavenumber(rem % n, n);
                acc += k * k;
                rem /= n;
            }
            *v = acc as f64;
        }

        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);

        Ok(Self {
            dim,
            n,
            len,
            mesh_width: 2.0 * PI / n as f64,
            ksq: ksq.into(),
            fwd,
            inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of grid points / coefficients, `N^d`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Mesh width `h = 2π/N`.
    pub fn mesh_width(&self) -> f64 {
        self.mesh_width
    }

    /// `|k|²` of the coefficient at flat index `flat`.
    #[inline]
    pub fn ksq(&self, flat: usize) -> f64 {
        self.ksq[flat]
    }

    /// Stride of `axis` in the row-major flat layout (axis 0 outermost).
    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow((self.dim - 1 - axis) as u32)
    }

    /// Wavenumber along `axis` of the coefficient at `flat`.
    #[inline]
    pub fn axis_wavenumber(&self, flat: usize, axis: usize) -> i64 {
        index_to_wavenumber(flat / self.stride(axis) % self.n, self.n)
    }

    /// Writes the wavenumber multi-index of `flat` into `out` (length `dim`).
    pub fn wavenumber_vector(&self, flat: usize, out: &mut [i64]) {
        debug_assert_eq!(out.len(), self.dim);
        let mut rem = flat;
        for axis in (0..self.dim).rev() {
            out[axis] = index_to_wavenumber(rem % self.n, self.n);
            rem /= self.n;
        }
    }

    /// Reduce an arbitrary integer wavenumber to its representative in
    /// `[-N/2, N/2)`.
    #[inline]
    pub fn fold(&self, k: i64) -> i64 {
        let n = self.n as i64;
        let r = k.rem_euclid(n);
        if r >= n / 2 {
            r - n
        } else {
            r
        }
    }

    /// Flat index of a wavenumber multi-index. Components must lie in the
    /// retained lattice.
    pub fn flat_index(&self, k: &[i64]) -> Result<usize> {
        if k.len() != self.dim {
            return Err(Error::SizeMismatch {
                expected: self.dim,
                got: k.len(),
            });
        }
        let mut flat = 0usize;
        for &kj in k {
            flat = flat * self.n + self.wavenumber_to_index(kj)?;
        }
        Ok(flat)
    }

    fn wavenumber_to_index(&self, k: i64) -> Result<usize> {
        let half = self.n as i64 / 2;
        if k < -half || k >= half {
            return Err(Error::WavenumberOutOfRange(k));
        }
        Ok(if k < 0 { k + self.n as i64 } else { k } as usize)
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len {
            return Err(Error::SizeMismatch {
                expected: self.len,
                got,
            });
        }
        Ok(())
    }

    pub(crate) fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dim {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// Unnormalized forward DFT along every axis, in place.
    pub(crate) fn dft_forward(&self, data: &mut [Complex64]) -> Result<()> {
        self.check_len(data.len())?;
        self.transform_all(data, &self.fwd.clone());
        Ok(())
    }

    /// Unnormalized inverse DFT along every axis, in place.
    pub(crate) fn dft_inverse(&self, data: &mut [Complex64]) -> Result<()> {
        self.check_len(data.len())?;
        self.transform_all(data, &self.inv.clone());
        Ok(())
    }

    fn transform_all(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
        // Last axis: contiguous lines.
        for line in data.chunks_exact_mut(n) {
            plan.process_with_scratch(line, &mut scratch);
        }
        // Remaining axes: gather strided lines into a local buffer.
        let mut line = vec![Complex64::default(); n];
        for axis in (0..self.dim.saturating_sub(1)).rev() {
            let stride = self.stride(axis);
            let block = stride * n;
            for block_start in (0..self.len).step_by(block) {
                for inner in 0..stride {
                    let base = block_start + inner;
                    for (t, slot) in line.iter_mut().enumerate() {
                        *slot = data[base + t * stride];
                    }
                    plan.process_with_scratch(&mut line, &mut scratch);
                    for (t, slot) in line.iter().enumerate() {
                        data[base + t * stride] = *slot;
                    }
                }
            }
        }
    }
}

#[inline]
fn index_to_wavenumber(index: usize, n: usize) -> i64 {
    if index < n / 2 {
        index as i64
    } else {
        index as i64 - n as i64
    }
}
