//! Structural properties of the operators and one-step maps: exact
//! symmetries, oracle cross-checks and τ → 0 behavior.

use num_complex::Complex64 as C;
use proptest::prelude::*;

use nls_spectral::baseline::reference_solve;
use nls_spectral::experiments::random_hr_data;
use nls_spectral::field::max_coeff_error;
use nls_spectral::lowreg::{kj, step, step_lowreg_1d, step_lowreg_dd, Method, SchemeParams};
use nls_spectral::norm::{norm, NormKind};
use nls_spectral::ops::{free_propagate, phi1_apply};
use nls_spectral::oracle::kj_kernel_direct;
use nls_spectral::{Field, TorusGrid};

fn rotate_physical(u: &Field, axis: usize) -> Field {
    // Shift by one grid cell: w(x_j) = u(x_{j-1}) along `axis`.
    let grid = u.grid();
    let phys = u.to_physical();
    let stride = (0..grid.dim())
        .rev()
        .take_while(|&a| a != axis)
        .fold(1, |acc, _| acc * grid.n());
    let n = grid.n();
    let mut out = phys.clone();
    for (flat, slot) in out.iter_mut().enumerate() {
        let line = flat / stride % n;
        let prev = (line + n - 1) % n;
        let src = flat - line * stride + prev * stride;
        *slot = phys[src];
    }
    Field::from_physical(grid, &out).unwrap()
}

fn pointwise(a: &Field, b: &Field) -> Field {
    let pa = a.to_physical();
    let pb = b.to_physical();
    let prod: Vec<C> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
    Field::from_physical(a.grid(), &prod).unwrap()
}

fn conj_field(u: &Field) -> Field {
    let phys: Vec<C> = u.to_physical().iter().map(|z| z.conj()).collect();
    Field::from_physical(u.grid(), &phys).unwrap()
}

fn all_methods(dim: usize) -> Vec<Method> {
    if dim == 1 {
        vec![Method::LowReg1D, Method::LowRegDD, Method::Strang]
    } else {
        vec![Method::LowRegDD, Method::Strang]
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_round_trip(seed in 0u64..1_000_000, n in prop::sample::select(vec![8usize, 16, 32])) {
        let g = TorusGrid::new(1, n).unwrap();
        let f = random_hr_data(&g, 0.0, seed);
        let back = Field::from_physical(&g, &f.to_physical()).unwrap();
        prop_assert!(max_coeff_error(&f, &back) <= 1e-12);
    }

    #[test]
    fn free_flow_is_isometric(seed in 0u64..1_000_000, t in -3.0f64..3.0) {
        let g = TorusGrid::new(2, 8).unwrap();
        let f = random_hr_data(&g, 1.0, seed);
        for r in [0.0, 1.0, 2.0] {
            let a = norm(&f, NormKind::SobolevR(r));
            let b = norm(&free_propagate(&f, t), NormKind::SobolevR(r));
            prop_assert!((a - b).abs() <= 1e-13 * a.max(1.0));
        }
    }

    #[test]
    fn free_flow_group_property(seed in 0u64..1_000_000, s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let g = TorusGrid::new(1, 32).unwrap();
        let f = random_hr_data(&g, 1.0, seed);
        let once = free_propagate(&f, s + t);
        let twice = free_propagate(&free_propagate(&f, s), t);
        prop_assert!(max_coeff_error(&once, &twice) <= 1e-12);
    }

    #[test]
    fn kj_is_symmetric(seed in 0u64..1_000_000, tau in 0.0f64..0.5) {
        let g = TorusGrid::new(2, 8).unwrap();
        let w = random_hr_data(&g, 1.0, seed);
        let v = random_hr_data(&g, 1.0, seed.wrapping_add(7));
        for axis in 0..2 {
            let a = kj(&w, &v, tau, axis).unwrap();
            let b = kj(&v, &w, tau, axis).unwrap();
            prop_assert!(max_coeff_error(&a, &b) <= 1e-13);
        }
    }

    #[test]
    fn steps_are_gauge_equivariant(seed in 0u64..1_000_000, theta in 0.0f64..std::f64::consts::TAU) {
        // Every term has homogeneity degree (2,1) in (u, ū), so a global
        // phase commutes with the step.
        let g = TorusGrid::new(1, 16).unwrap();
        let u = random_hr_data(&g, 1.0, seed);
        let phase = C::from_polar(1.0, theta);
        for method in all_methods(1) {
            let p = SchemeParams::new(0.05, 1.0, method).unwrap();
            let a = step(&u.scale(phase), &p).unwrap();
            let b = step(&u, &p).unwrap().scale(phase);
            prop_assert!(max_coeff_error(&a, &b) <= 1e-13);
        }
    }

    #[test]
    fn steps_are_translation_equivariant(seed in 0u64..1_000_000) {
        let g = TorusGrid::new(1, 16).unwrap();
        let u = random_hr_data(&g, 1.0, seed);
        for method in all_methods(1) {
            let p = SchemeParams::new(0.08, 1.0, method).unwrap();
            let a = step(&rotate_physical(&u, 0), &p).unwrap();
            let b = rotate_physical(&step(&u, &p).unwrap(), 0);
            prop_assert!(max_coeff_error(&a, &b) <= 1e-12);
        }
    }

    #[test]
    fn order_fit_recovers_exact_slopes(p in 0.5f64..3.0, c in 0.1f64..10.0) {
        let pts: Vec<(f64, f64)> = (0..6).map(|i| {
            let tau = 0.2 / 2f64.powi(i);
            (tau, c * tau.powf(p))
        }).collect();
        let fit = nls_spectral::experiments::estimate_order(&pts);
        prop_assert!(fit.reliable);
        prop_assert!((fit.order - p).abs() <= 1e-9);
    }
}

#[test]
fn steps_approach_free_flow_linearly_in_tau() {
    // ‖step(u) − e^{iτΔ}u‖₀ = O(τ): the defect must halve with τ.
    let g = TorusGrid::new(1, 32).unwrap();
    let u = random_hr_data(&g, 3.0, 5);
    for method in all_methods(1) {
        let defect = |tau: f64| {
            let p = SchemeParams::new(tau, 1.0, method).unwrap();
            norm(
                &(&step(&u, &p).unwrap() - &free_propagate(&u, tau)),
                NormKind::DiscreteL2,
            )
        };
        let (e1, e2) = (defect(1e-2), defect(5e-3));
        let ratio = e2 / e1;
        assert!(
            (0.4..0.6).contains(&ratio),
            "{method}: consistency defect ratio {ratio} not ~1/2"
        );
    }
}

#[test]
fn dd_bracket_matches_oracle_assembly() {
    // The d-dimensional step must equal e^{iτΔ} applied to the bracket
    // assembled from the direct-sum K_j oracles and the φ₁ multiplier.
    let g = TorusGrid::new(2, 8).unwrap();
    let u = random_hr_data(&g, 1.0, 77);
    let (tau, mu) = (0.07, 1.0);
    let d = 2.0;

    let ubar = conj_field(&u);
    let cubic = pointwise(&pointwise(&u, &ubar), &u);
    let phys = u.to_physical();
    let twisted: Vec<C> = phys
        .iter()
        .map(|&z| z * C::from_polar(1.0, mu * tau * z.norm_sqr()))
        .collect();
    let exp_term = Field::from_physical(&g, &twisted).unwrap();

    let mut ksum = Field::zeros(&g);
    for axis in 0..2 {
        let kuu = kj_kernel_direct(&u, &u, tau, axis).unwrap();
        let kbu = kj_kernel_direct(&ubar, &u, tau, axis).unwrap();
        ksum = &ksum + &(&pointwise(&kuu, &ubar) + &pointwise(&kbu, &u).scale(C::new(2.0, 0.0)));
    }

    let u2 = pointwise(&u, &u);
    let phi = pointwise(&phi1_apply(&ubar, tau), &u2);
    let i_mu = C::new(0.0, mu);
    let bracket = &(&(&exp_term + &cubic.scale(i_mu * tau * (3.0 * d - 1.0)))
        - &phi.scale(i_mu * tau))
        - &ksum.scale(i_mu);
    let expected = free_propagate(&bracket, tau);

    let p = SchemeParams::new(tau, mu, Method::LowRegDD).unwrap();
    let got = step_lowreg_dd(&u, &p).unwrap();
    assert!(max_coeff_error(&got, &expected) <= 1e-12);
}

#[test]
fn one_dimensional_schemes_cross_validate() {
    // The 1D-specialized and d-dimensional schemes are two independent
    // derivations of the same expansion: their one-step difference on
    // smooth data is O(τ³).
    let g = TorusGrid::new(1, 64).unwrap();
    let u = random_hr_data(&g, 5.0, 9);
    let diff = |tau: f64| {
        let a = step_lowreg_1d(&u, &SchemeParams::new(tau, 1.0, Method::LowReg1D).unwrap()).unwrap();
        let b = step_lowreg_dd(&u, &SchemeParams::new(tau, 1.0, Method::LowRegDD).unwrap()).unwrap();
        norm(&(&a - &b), NormKind::DiscreteL2)
    };
    let (e1, e2) = (diff(2e-2), diff(1e-2));
    let ratio = e1 / e2;
    assert!(
        (6.0..10.0).contains(&ratio),
        "cross-scheme defect ratio {ratio} not ~8"
    );
}

#[test]
fn independent_second_order_references_agree() {
    // Two fine-step solves of the same smooth datum by the two method
    // families must coincide far below the measurement scale.
    let g = TorusGrid::new(1, 128).unwrap();
    let u0 = random_hr_data(&g, 5.0, 21);
    let t_end = 1.0;
    let p_low = SchemeParams::new(1e-4, 1.0, Method::LowReg1D).unwrap();
    let p_str = SchemeParams::new(1e-4, 1.0, Method::Strang).unwrap();
    let a = reference_solve(&u0, t_end, &p_low, 1).unwrap();
    let b = reference_solve(&u0, t_end, &p_str, 1).unwrap();
    let dev = norm(&(&a - &b), NormKind::DiscreteL2);
    assert!(dev <= 1e-7, "cross-method references deviate by {dev}");
}
