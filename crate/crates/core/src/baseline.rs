//! Ground-truth machinery: Strang splitting, the analytic plane-wave
//! solution and fine-step reference solves.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::TorusGrid;
use crate::lowreg::{step, Method, SchemeParams};
use crate::ops::free_propagate;

/// One Strang splitting step: half nonlinear flow, full linear flow, half
/// nonlinear flow. The pointwise nonlinear subflow `u ↦ e^{-iμt|u|²}u` is
/// exact because `|u|` is invariant under it, so the composition preserves
/// the discrete mass up to rounding.
pub fn strang_step(u: &Field, p: &SchemeParams) -> Result<Field> {
    if p.method != Method::Strang {
        return Err(Error::MethodMismatch(
            p.method.name(),
            "strang_step drives the strang method",
        ));
    }
    let half = half_nonlinear(u, p.mu, p.tau / 2.0)?;
    let lin = free_propagate(&half, p.tau);
    half_nonlinear(&lin, p.mu, p.tau / 2.0)
}

fn half_nonlinear(u: &Field, mu: f64, t: f64) -> Result<Field> {
    let phys: Vec<Complex64> = u
        .to_physical()
        .iter()
        .map(|&z| z * Complex64::from_polar(1.0, -mu * t * z.norm_sqr()))
        .collect();
    Field::from_physical(u.grid(), &phys)
}

/// The exact single-mode solution `u(t,x) = a e^{i k·x} e^{-i(|k|²+μ|a|²)t}`
/// of the cubic NLS, sampled on `grid`.
pub fn plane_wave(
    a: Complex64,
    k: &[i64],
    mu: f64,
    t: f64,
    grid: &TorusGrid,
) -> Result<Field> {
    let ksq: f64 = k.iter().map(|&kj| (kj * kj) as f64).sum();
    let phase = Complex64::from_polar(1.0, -(ksq + mu * a.norm_sqr()) * t);
    Field::single_mode(grid, k, a * phase)
}

/// Number of steps needed to reach `t_end` with step `tau`; rejects horizons
/// that are not an integer number of steps.
pub fn step_count(t_end: f64, tau: f64) -> Result<usize> {
    let tau_ok = tau.is_finite() && tau > 0.0;
    if !tau_ok || !t_end.is_finite() || t_end <= 0.0 {
        return Err(Error::NonIntegerStepCount { t: t_end, tau });
    }
    let steps = (t_end / tau).round();
    if steps < 1.0 || (steps * tau - t_end).abs() > 1e-9 * t_end.abs() {
        return Err(Error::NonIntegerStepCount { t: t_end, tau });
    }
    Ok(steps as usize)
}

/// Integrate `nsteps` steps of the configured method.
pub fn solve_steps(u0: &Field, p: &SchemeParams, nsteps: usize) -> Result<Field> {
    let mut u = u0.clone();
    for _ in 0..nsteps {
        u = step(&u, p)?;
    }
    Ok(u)
}

/// Fine-step solve to time `t_end` with step `p.tau / refinement`, used as
/// the ground truth in time-error studies (with the method under test
/// referenced by the *other* method).
pub fn reference_solve(
    u0: &Field,
    t_end: f64,
    p: &SchemeParams,
    refinement: u32,
) -> Result<Field> {
    if refinement < 1 {
        return Err(Error::InvalidConfig(
            "reference refinement must be at least 1".into(),
        ));
    }
    let tau_ref = p.tau / refinement as f64;
    let nsteps = step_count(t_end, tau_ref)?;
    let p_ref = SchemeParams::new(tau_ref, p.mu, p.method)?;
    solve_steps(u0, &p_ref, nsteps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{energy, mass, random_hr_data};
    use crate::field::max_coeff_error;
    use crate::norm::{norm, NormKind};
    use crate::ops::spectral_derivative;
    use crate::testutil::random_field;
    use num_complex::Complex64 as C;

    #[test]
    fn strang_is_free_flow_for_mu_zero() {
        let g = TorusGrid::new(1, 64).unwrap();
        let u = random_field(&g, 2);
        let p = SchemeParams::new(0.05, 0.0, Method::Strang).unwrap();
        let expect = free_propagate(&u, 0.05);
        assert!(max_coeff_error(&strang_step(&u, &p).unwrap(), &expect) <= 1e-13);
    }

    #[test]
    fn strang_exact_on_constants() {
        let g = TorusGrid::new(1, 16).unwrap();
        let c = C::new(0.6, -0.8);
        let (tau, mu) = (0.21, 1.7);
        let p = SchemeParams::new(tau, mu, Method::Strang).unwrap();
        let got = strang_step(&Field::constant(&g, c), &p).unwrap();
        let expect = Field::constant(&g, c * C::from_polar(1.0, -mu * tau * c.norm_sqr()));
        assert!(max_coeff_error(&got, &expect) <= 1e-14);
    }

    #[test]
    fn strang_exact_on_plane_waves() {
        // All three subflows are exact on a single mode, so one Strang step
        // reproduces a e^{ikx} e^{-i(k²+μ|a|²)τ} to rounding.
        let g = TorusGrid::new(1, 32).unwrap();
        let a = C::new(0.9, 0.3);
        let (k, tau, mu) = (3i64, 0.13, 1.0);
        let u0 = plane_wave(a, &[k], mu, 0.0, &g).unwrap();
        let p = SchemeParams::new(tau, mu, Method::Strang).unwrap();
        let got = strang_step(&u0, &p).unwrap();
        let expect = plane_wave(a, &[k], mu, tau, &g).unwrap();
        assert!(max_coeff_error(&got, &expect) <= 1e-13);
    }

    #[test]
    fn strang_preserves_mass_per_step() {
        let g = TorusGrid::new(1, 64).unwrap();
        let mut u = random_hr_data(&g, 2.0, 4);
        let p = SchemeParams::new(0.02, 1.0, Method::Strang).unwrap();
        let m0 = norm(&u, NormKind::DiscreteL2);
        for _ in 0..20 {
            u = strang_step(&u, &p).unwrap();
            let m = norm(&u, NormKind::DiscreteL2);
            assert!((m - m0).abs() <= 1e-13 * m0);
        }
    }

    #[test]
    fn plane_wave_examples() {
        let g = TorusGrid::new(1, 32).unwrap();
        let a = C::new(0.8, -0.5);
        let (k, mu) = (2i64, 1.4);
        let u0 = plane_wave(a, &[k], mu, 0.0, &g).unwrap();
        assert!((u0.coeff(&[k]).unwrap() - a).norm() < 1e-15);
        assert!((mass(&u0) - a.norm_sqr()).abs() <= 1e-13);
        let expect_energy = (k * k) as f64 * a.norm_sqr() + 0.5 * mu * a.norm_sqr().powi(2);
        assert!((energy(&u0, mu) - expect_energy).abs() <= 1e-12);
        assert!(plane_wave(a, &[99], mu, 0.0, &g).is_err());
    }

    #[test]
    fn plane_wave_satisfies_discrete_pde() {
        // i ∂_t u = -Δu + μ|u|²u with ∂_t computed from the analytic phase
        // and the right side from the discrete operators.
        let g = TorusGrid::new(2, 16).unwrap();
        let a = C::new(0.7, 0.2);
        let k = [2i64, -3i64];
        let mu = 1.0;
        let t = 0.4;
        let u = plane_wave(a, &k, mu, t, &g).unwrap();
        let ksq: f64 = k.iter().map(|&kj| (kj * kj) as f64).sum();
        let omega = ksq + mu * a.norm_sqr();
        // i·∂_t u = i·(-iω)u = ω u.
        let lhs = u.scale(C::new(omega, 0.0));
        let mut lap = Field::zeros(&g);
        for axis in 0..2 {
            let d2 = spectral_derivative(&spectral_derivative(&u, axis).unwrap(), axis).unwrap();
            lap = &lap + &d2;
        }
        let phys = u.to_physical();
        let cubic: Vec<C> = phys.iter().map(|z| z.norm_sqr() * z).collect();
        let rhs = &Field::from_physical(&g, &cubic).unwrap().scale(C::new(mu, 0.0)) - &lap;
        assert!(max_coeff_error(&lhs, &rhs) <= 1e-10);
    }

    #[test]
    fn reference_solve_checks() {
        let g = TorusGrid::new(1, 32).unwrap();
        let u = random_field(&g, 8);
        // μ = 0: any method, any refinement integrates the free flow exactly.
        let p = SchemeParams::new(0.25, 0.0, Method::Strang).unwrap();
        let got = reference_solve(&u, 1.0, &p, 4).unwrap();
        assert!(max_coeff_error(&got, &free_propagate(&u, 1.0)) <= 1e-12);
        // Non-integer step counts are rejected.
        let p = SchemeParams::new(0.3, 0.0, Method::Strang).unwrap();
        assert!(matches!(
            reference_solve(&u, 1.0, &p, 1),
            Err(Error::NonIntegerStepCount { .. })
        ));
    }

    #[test]
    fn strang_reference_tracks_analytic_plane_wave() {
        let g = TorusGrid::new(1, 32).unwrap();
        let a = C::new(1.0, 0.0);
        let (k, mu) = (2i64, 1.0);
        let u0 = plane_wave(a, &[k], mu, 0.0, &g).unwrap();
        let p = SchemeParams::new(0.01, mu, Method::Strang).unwrap();
        let got = reference_solve(&u0, 1.0, &p, 10).unwrap();
        let expect = plane_wave(a, &[k], mu, 1.0, &g).unwrap();
        assert!(max_coeff_error(&got, &expect) <= 1e-10);
    }
}
