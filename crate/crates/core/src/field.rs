//! Complex-valued state on a torus grid.
//!
//! A [`Field`] canonically stores mean-integral Fourier coefficients: the
//! raw forward DFT divided by `N^d`, so the physical values at the grid
//! points are exactly `Σ_k v̂_k e^{i k·x_j}`. Fields are immutable values;
//! all operations return new fields.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::TorusGrid;

#[derive(Clone, Debug)]
pub struct Field {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
}

impl Field {
    pub fn zeros(grid: &TorusGrid) -> Self {
        Self {
            grid: grid.clone(),
            coeffs: vec![Complex64::default(); grid.len()],
        }
    }

    /// Field with constant physical value `c` (all mass in the zero mode).
    pub fn constant(grid: &TorusGrid, c: Complex64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = c;
        f
    }

    /// Field `amp · e^{i k·x}` for a wavenumber `k` in the retained lattice.
    pub fn single_mode(grid: &TorusGrid, k: &[i64], amp: Complex64) -> Result<Self> {
        let flat = grid.flat_index(k)?;
        let mut f = Self::zeros(grid);
        f.coeffs[flat] = amp;
        Ok(f)
    }

    pub fn from_coeffs(grid: &TorusGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::SizeMismatch {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            grid: grid.clone(),
            coeffs,
        })
    }

    /// Build a field from physical values at the grid points.
    ///
    /// The raw DFT is divided by `N^d` so the stored coefficients follow the
    /// mean-integral convention.
    pub fn from_physical(grid: &TorusGrid, values: &[Complex64]) -> Result<Self> {
        let mut coeffs = values.to_vec();
        grid.dft_forward(&mut coeffs)?;
        let scale = 1.0 / grid.len() as f64;
        for c in &mut coeffs {
            *c *= scale;
        }
        Ok(Self {
            grid: grid.clone(),
            coeffs,
        })
    }

    /// Physical values at the grid points, `Σ_k v̂_k e^{i k·x_j}`.
    pub fn to_physical(&self) -> Vec<Complex64> {
        let mut values = self.coeffs.clone();
        self.grid
            .dft_inverse(&mut values)
            .expect("coefficient length matches grid by construction");
        values
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of the zero mode (the field mean).
    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Coefficient at a wavenumber multi-index in the retained lattice.
    pub fn coeff(&self, k: &[i64]) -> Result<Complex64> {
        Ok(self.coeffs[self.grid.flat_index(k)?])
    }

    /// New field with each coefficient mapped through `f` together with its
    /// flat index.
    pub(crate) fn map_indexed(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f(i, c))
            .collect();
        Self {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_indexed(|_, c| c * s)
    }

    pub fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(
                self.grid.dim(),
                self.grid.n(),
                other.grid.dim(),
                other.grid.n(),
            ));
        }
        Ok(())
    }
}

impl std::ops::Add for &Field {
    type Output = Field;
    fn add(self, rhs: &Field) -> Field {
        self.same_grid(rhs).expect("field addition requires matching grids");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Field {
            grid: self.grid.clone(),
            coeffs,
        }
    }
}

impl std::ops::Sub for &Field {
    type Output = Field;
    fn sub(self, rhs: &Field) -> Field {
        self.same_grid(rhs).expect("field subtraction requires matching grids");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Field {
            grid: self.grid.clone(),
            coeffs,
        }
    }
}

/// Largest coefficient-wise deviation between two fields on the same grid.
pub fn max_coeff_error(a: &Field, b: &Field) -> f64 {
    a.same_grid(b).expect("comparison requires matching grids");
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Pointwise product of two physical-value arrays.
pub(crate) fn mul_pointwise(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}
