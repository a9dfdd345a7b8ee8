//! Brute-force direct-sum oracles for the oscillatory Duhamel integrals.
//!
//! These evaluate the mode-triple (and mode-pair) sums term by term, with
//! each oscillatory integral in closed form, and serve as ground truth for
//! the `O(N^d log N)` multiplier pipelines in [`crate::lowreg`]. The cost is
//! `O(N^{3d})`, so resolutions are capped.
//!
//! The sums run over the retained lattice and reproduce collocation
//! semantics exactly: a pointwise product folds the outgoing wavenumber back
//! into the lattice (mod N per axis), and any multiplier applied after a
//! product sees the folded representative. On unaliased triples the weights
//! below coincide with the exact integrals `∫₀^τ e^{2is k₁k} ds` etc.; on
//! aliased triples they equal what the multiplier pipeline computes, which
//! is the object the schemes actually evolve.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::TorusGrid;

/// Largest admitted per-axis resolution for the 1D direct sums.
pub const ORACLE_CAP_1D: usize = 32;
/// Largest admitted per-axis resolution for the 2D direct sums.
pub const ORACLE_CAP_2D: usize = 8;

fn check_cap(grid: &TorusGrid) -> Result<()> {
    let cap = match grid.dim() {
        1 => ORACLE_CAP_1D,
        2 => ORACLE_CAP_2D,
        d => {
            return Err(Error::OracleCapExceeded {
                dim: d,
                n: grid.n(),
                cap: 0,
            })
        }
    };
    if grid.n() > cap {
        return Err(Error::OracleCapExceeded {
            dim: grid.dim(),
            n: grid.n(),
            cap,
        });
    }
    Ok(())
}

/// `∫₀^τ e^{isω} ds` in closed form.
fn osc_integral(omega: f64, tau: f64) -> Complex64 {
    if omega == 0.0 {
        Complex64::new(tau, 0.0)
    } else {
        (Complex64::new(0.0, tau * omega).exp() - 1.0) / Complex64::new(0.0, omega)
    }
}

/// Wavenumber multi-indices of every flat position, flattened as
/// `dim`-sized rows.
fn wavenumber_table(grid: &TorusGrid) -> Vec<i64> {
    let d = grid.dim();
    let mut table = vec![0i64; grid.len() * d];
    for flat in 0..grid.len() {
        grid.wavenumber_vector(flat, &mut table[flat * d..(flat + 1) * d]);
    }
    table
}

/// Coefficients of the conjugate field, obtained by the index relation
/// `(v̄)̂_k = conj(v̂_{fold(-k)})` (the Nyquist row maps to itself).
fn conjugate_coeffs(v: &Field) -> Vec<Complex64> {
    let grid = v.grid();
    let d = grid.dim();
    let table = wavenumber_table(grid);
    let mut neg = vec![0i64; d];
    (0..grid.len())
        .map(|flat| {
            for (a, slot) in neg.iter_mut().enumerate() {
                *slot = grid.fold(-table[flat * d + a]);
            }
            v.coeffs()[grid.flat_index(&neg).expect("folded index in lattice")].conj()
        })
        .collect()
}

struct Weights1D {
    j1: Complex64,
    j2: Complex64,
    full: Complex64,
}

/// Closed-form weights of one 1D mode triple for the three kernels.
fn weights_1d(grid: &TorusGrid, k1: i64, k2: i64, k3: i64, tau: f64) -> (usize, Weights1D) {
    let m = grid.fold(k2 + k3);
    let k = grid.fold(k1 + m);
    let out = grid.flat_index(&[k]).expect("folded index in lattice");

    let j1 = if k1 == 0 || k == 0 {
        Complex64::new(tau, 0.0)
    } else {
        let omega = (k * k + k1 * k1 - m * m) as f64;
        (Complex64::new(0.0, tau * omega).exp() - 1.0) / Complex64::new(0.0, 2.0 * (k1 * k) as f64)
    };
    let j2 = if k2 == 0 || k3 == 0 {
        Complex64::new(tau, 0.0)
    } else {
        let omega = (m * m - k2 * k2 - k3 * k3) as f64;
        (Complex64::new(0.0, tau * omega).exp() - 1.0)
            / Complex64::new(0.0, 2.0 * (k2 * k3) as f64)
    };
    let full = osc_integral((k * k + k1 * k1 - k2 * k2 - k3 * k3) as f64, tau);
    (out, Weights1D { j1, j2, full })
}

fn triple_sum_1d(
    v: &Field,
    tau: f64,
    pick: impl Fn(&Weights1D) -> Complex64,
) -> Result<Field> {
    if v.grid().dim() != 1 {
        return Err(Error::RequiresOneDim(v.grid().dim()));
    }
    check_cap(v.grid())?;
    let grid = v.grid();
    let n = grid.len();
    let cbar = conjugate_coeffs(v);
    let table = wavenumber_table(grid);
    let vc = v.coeffs();

    let mut out = vec![Complex64::default(); n];
    for i1 in 0..n {
        let k1 = table[i1];
        if cbar[i1].norm_sqr() == 0.0 {
            continue;
        }
        for i2 in 0..n {
            let k2 = table[i2];
            let c12 = cbar[i1] * vc[i2];
            for i3 in 0..n {
                let k3 = table[i3];
                let (slot, w) = weights_1d(grid, k1, k2, k3, tau);
                out[slot] += pick(&w) * c12 * vc[i3];
            }
        }
    }
    Field::from_coeffs(grid, out)
}

/// Direct sum with the first oscillatory kernel; ground truth for
/// [`crate::lowreg::j1_1d`].
pub fn j1_kernel_direct(v: &Field, tau: f64) -> Result<Field> {
    triple_sum_1d(v, tau, |w| w.j1)
}

/// Direct sum with the second oscillatory kernel; ground truth for
/// [`crate::lowreg::j2_1d`].
pub fn j2_kernel_direct(v: &Field, tau: f64) -> Result<Field> {
    triple_sum_1d(v, tau, |w| w.j2)
}

/// Direct sum with the complement kernel: the part of the full Duhamel
/// kernel not captured by the two scheme kernels and the constant `-1`
/// (which integrates to `-τ|v|²v`), so that per triple
/// `full = j1 + j2 - τ + remainder`.
pub fn remainder_kernel_direct(v: &Field, tau: f64) -> Result<Field> {
    triple_sum_1d(v, tau, |w| w.full - w.j1 - w.j2 + tau)
}

/// Exact evaluation of the twisted Duhamel integral of the collocated
/// system: the triple sum with kernel `∫₀^τ e^{isΩ} ds`,
/// `Ω = |k|² + |κ|² − |λ|² − |ν|²` with `k` the folded output mode.
/// Supported in one and two dimensions below the oracle caps.
pub fn duhamel_integral_direct(v: &Field, tau: f64) -> Result<Field> {
    let grid = v.grid();
    check_cap(grid)?;
    if grid.dim() == 1 {
        return triple_sum_1d(v, tau, |w| w.full);
    }

    let d = grid.dim();
    let n = grid.len();
    let cbar = conjugate_coeffs(v);
    let table = wavenumber_table(grid);
    let vc = v.coeffs();

    let mut out = vec![Complex64::default(); n];
    let mut kout = vec![0i64; d];
    for i1 in 0..n {
        if cbar[i1].norm_sqr() == 0.0 {
            continue;
        }
        let ka = &table[i1 * d..(i1 + 1) * d];
        for i2 in 0..n {
            let kb = &table[i2 * d..(i2 + 1) * d];
            let c12 = cbar[i1] * vc[i2];
            for i3 in 0..n {
                let kc = &table[i3 * d..(i3 + 1) * d];
                let mut omega = 0i64;
                for a in 0..d {
                    kout[a] = grid.fold(ka[a] + kb[a] + kc[a]);
                    omega += kout[a] * kout[a] + ka[a] * ka[a] - kb[a] * kb[a] - kc[a] * kc[a];
                }
                let slot = grid.flat_index(&kout).expect("folded index in lattice");
                out[slot] += osc_integral(omega as f64, tau) * c12 * vc[i3];
            }
        }
    }
    Field::from_coeffs(grid, out)
}

/// Direct double sum with kernel `e^{2is κ_j λ_j}` over mode pairs of `w`
/// and `v`; ground truth for [`crate::lowreg::kj`].
pub fn kj_kernel_direct(w: &Field, v: &Field, tau: f64, axis: usize) -> Result<Field> {
    w.same_grid(v)?;
    let grid = w.grid();
    grid.check_axis(axis)?;
    check_cap(grid)?;

    let d = grid.dim();
    let n = grid.len();
    let table = wavenumber_table(grid);
    let wc = w.coeffs();
    let vc = v.coeffs();

    let mut out = vec![Complex64::default(); n];
    let mut kout = vec![0i64; d];
    for i1 in 0..n {
        if wc[i1].norm_sqr() == 0.0 {
            continue;
        }
        let ka = &table[i1 * d..(i1 + 1) * d];
        for i2 in 0..n {
            let kb = &table[i2 * d..(i2 + 1) * d];
            for a in 0..d {
                kout[a] = grid.fold(ka[a] + kb[a]);
            }
            let (kj_a, kj_b, mj) = (ka[axis], kb[axis], kout[axis]);
            let weight = if kj_a == 0 || kj_b == 0 {
                Complex64::new(tau, 0.0)
            } else {
                let omega = (mj * mj - kj_a * kj_a - kj_b * kj_b) as f64;
                (Complex64::new(0.0, tau * omega).exp() - 1.0)
                    / Complex64::new(0.0, 2.0 * (kj_a * kj_b) as f64)
            };
            let slot = grid.flat_index(&kout).expect("folded index in lattice");
            out[slot] += weight * wc[i1] * vc[i2];
        }
    }
    Field::from_coeffs(grid, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::max_coeff_error;
    use crate::lowreg::{j1_1d, j2_1d, kj};
    use crate::testutil::random_field;
    use num_complex::Complex64 as C;

    #[test]
    fn caps_guard_large_grids() {
        let g = TorusGrid::new(1, 64).unwrap();
        let f = Field::zeros(&g);
        assert!(matches!(
            duhamel_integral_direct(&f, 0.1),
            Err(Error::OracleCapExceeded { .. })
        ));
        let g3 = TorusGrid::new(3, 4).unwrap();
        let f3 = Field::zeros(&g3);
        assert!(duhamel_integral_direct(&f3, 0.1).is_err());
    }

    #[test]
    fn duhamel_on_zero_and_constants() {
        let g = TorusGrid::new(1, 16).unwrap();
        let z = Field::zeros(&g);
        assert!(max_coeff_error(&duhamel_integral_direct(&z, 0.4).unwrap(), &z) == 0.0);

        // Constant c: the single resonant triple gives τ|c|²c.
        let c = C::new(0.5, -1.2);
        let tau = 0.4;
        let f = Field::constant(&g, c);
        let expect = Field::constant(&g, tau * c.norm_sqr() * c);
        assert!(max_coeff_error(&duhamel_integral_direct(&f, tau).unwrap(), &expect) <= 1e-14);
    }

    #[test]
    fn kernel_oracles_match_closed_forms_on_single_mode() {
        let g = TorusGrid::new(1, 16).unwrap();
        let tau = 0.31;
        let f = Field::single_mode(&g, &[1], C::new(1.0, 0.0)).unwrap();
        assert!(
            max_coeff_error(&j1_kernel_direct(&f, tau).unwrap(), &j1_1d(&f, tau).unwrap())
                <= 1e-13
        );
        assert!(
            max_coeff_error(&j2_kernel_direct(&f, tau).unwrap(), &j2_1d(&f, tau).unwrap())
                <= 1e-13
        );
        assert!(max_coeff_error(
            &kj_kernel_direct(&f, &f, tau, 0).unwrap(),
            &kj(&f, &f, tau, 0).unwrap()
        ) <= 1e-13);
    }

    #[test]
    fn kernel_oracles_match_pipelines_on_random_fields() {
        let tau = 0.17;
        for n in [8, 16] {
            let g = TorusGrid::new(1, n).unwrap();
            let v = random_field(&g, 90 + n as u64);
            assert!(
                max_coeff_error(&j1_kernel_direct(&v, tau).unwrap(), &j1_1d(&v, tau).unwrap())
                    <= 1e-12
            );
            assert!(
                max_coeff_error(&j2_kernel_direct(&v, tau).unwrap(), &j2_1d(&v, tau).unwrap())
                    <= 1e-12
            );
        }
        let g = TorusGrid::new(2, 8).unwrap();
        let w = random_field(&g, 3);
        let v = random_field(&g, 4);
        for axis in 0..2 {
            assert!(max_coeff_error(
                &kj_kernel_direct(&w, &v, tau, axis).unwrap(),
                &kj(&w, &v, tau, axis).unwrap()
            ) <= 1e-12);
        }
    }

    #[test]
    fn duhamel_decomposes_into_kernel_oracles() {
        // full = j1 + j2 + remainder − τ|v|²v, the discrete analog of
        // splitting the kernel into its two scheme parts and the constant.
        let g = TorusGrid::new(1, 16).unwrap();
        let v = random_field(&g, 55);
        let tau = 0.23;
        let full = duhamel_integral_direct(&v, tau).unwrap();
        let j1 = j1_kernel_direct(&v, tau).unwrap();
        let j2 = j2_kernel_direct(&v, tau).unwrap();
        let rem = remainder_kernel_direct(&v, tau).unwrap();
        let phys = v.to_physical();
        let cubic: Vec<C> = phys.iter().map(|z| tau * z.norm_sqr() * z).collect();
        let cubic = Field::from_physical(&g, &cubic).unwrap();
        let sum = &(&(&j1 + &j2) + &rem) - &cubic;
        assert!(max_coeff_error(&full, &sum) <= 1e-12);
    }
}
