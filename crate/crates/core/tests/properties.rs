use std::f64::consts::{PI, TAU};

use coulomb2d::amplitude::{
    f0_closed, f1_closed, f_closed, f_series_exact, sigma, sigma_closed_at, AngleGrid, SummationOptions,
};
use coulomb2d::exec::Execution;
use coulomb2d::kinematics::{CouplingGate, EnergyInput, Kinematics, ParticleSpec, Species};
use coulomb2d::phase_shift::{s_matrix_exact, s_matrix_nonrel, s_matrix_small_gamma, AngularMomentum};
use coulomb2d::radial::{
    eta_distance_mod_pi, extract_phase, linear_grid, ode_integrate, FitComponent, FitOptions, OdeOptions,
};
use coulomb2d::specfun::{gamma_ratio, kummer_phi, kummer_recurrence_check, log_gamma};
use num_complex::Complex64;
use proptest::prelude::*;

fn kin(gamma: f64, e: f64) -> Kinematics {
    Kinematics::new(gamma, EnergyInput::EnergyRatio(e), CouplingGate::Enforce).unwrap()
}

fn odd(max: i32) -> impl Strategy<Value = i32> {
    (-(max / 2) - 1..=max / 2).prop_map(|n| 2 * n + 1)
}

proptest! {
    #[test]
    fn coupling_relations(gamma in -0.49f64..0.49, e in 1.0001f64..100.0) {
        let k = kin(gamma, e);
        prop_assert!((k.beta * k.v_over_c - gamma).abs() <= 1e-14 * gamma.abs().max(1e-300));
        let b2 = k.beta * k.beta;
        prop_assert!((b2 - k.beta_prime * k.beta_prime - gamma * gamma).abs() <= 1e-14 * b2.max(1e-300));
    }

    #[test]
    fn positron_flips_signs_only(z in 1u32..=68, e in 1.0001f64..100.0) {
        let el = Kinematics::from_spec(&ParticleSpec::new(Species::Electron, z), EnergyInput::EnergyRatio(e), CouplingGate::Enforce).unwrap();
        let po = Kinematics::from_spec(&ParticleSpec::new(Species::Positron, z), EnergyInput::EnergyRatio(e), CouplingGate::Enforce).unwrap();
        prop_assert_eq!(el.gamma_coupling, -po.gamma_coupling);
        prop_assert_eq!(el.beta, -po.beta);
        prop_assert_eq!(el.beta_prime, -po.beta_prime);
        prop_assert_eq!(el.k, po.k);
        prop_assert_eq!(el.v_over_c, po.v_over_c);
    }

    #[test]
    fn log_gamma_conjugation(x in -50.0f64..200.0, y in -300.0f64..300.0) {
        prop_assume!(y.abs() > 1e-3 || x > 0.0);
        let z = Complex64::new(x, y);
        let a = log_gamma(z.conj()).unwrap();
        let b = log_gamma(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-13 * b.norm().max(1.0));
    }

    #[test]
    fn conjugate_gamma_ratio_is_unimodular(x in 0.01f64..50.0, y in -20.0f64..20.0) {
        let r = gamma_ratio(Complex64::new(x, -y), Complex64::new(x, y)).unwrap();
        prop_assert!((r.norm() - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn kummer_conjugation(s in 0.1f64..5.0, beta in -3.0f64..3.0, rho in 0.0f64..2000.0) {
        let a = Complex64::new(s, -beta);
        let b = 2.0 * s + 1.0;
        let z = Complex64::new(0.0, -2.0 * rho);
        let lhs = kummer_phi(a.conj(), b, z.conj()).unwrap();
        let rhs = kummer_phi(a, b, z).unwrap().conj();
        prop_assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm());
    }

    #[test]
    fn kummer_recurrence_on_domain(s in 0.1f64..10.0, beta in -3.5f64..3.5, rho in 0.0f64..5000.0) {
        let r = kummer_recurrence_check(Complex64::new(s, -beta), 2.0 * s + 1.0, Complex64::new(0.0, -2.0 * rho)).unwrap();
        prop_assert!(r <= 1e-8, "residual {}", r);
    }

    #[test]
    fn exact_s_is_unitary(two_j in odd(401), gamma in -0.49f64..0.49, e in 1.001f64..100.0) {
        let j = AngularMomentum::new(two_j).unwrap();
        let s = s_matrix_exact(j, &kin(gamma, e)).unwrap();
        prop_assert!((s.value.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((Complex64::from_polar(1.0, 2.0 * s.eta_principal) - s.value).norm() <= 1e-12);
    }

    #[test]
    fn small_gamma_reduces_to_nonrel(two_j in odd(41), beta in -2.0f64..2.0) {
        // at v/c -> 0 with beta fixed the correction carries 1 - beta'/beta ~ v^2 / 2
        let k = Kinematics::from_beta_velocity(beta, 1e-7).unwrap();
        let j = AngularMomentum::new(two_j).unwrap();
        let small = s_matrix_small_gamma(j, &k).unwrap().value;
        let nonrel = s_matrix_nonrel(j.m().unsigned_abs(), beta);
        prop_assert!((small - nonrel).norm() <= 1e-12);
    }

    #[test]
    fn closed_amplitude_is_sum_of_parts(gamma in -0.3f64..0.3, e in 1.01f64..20.0, theta in 0.1f64..6.18) {
        let k = kin(gamma, e);
        let g = AngleGrid::with_default_cutoff(vec![theta]).unwrap();
        let f = f_closed(&g, &k).values[0];
        let (f0, f1) = (f0_closed(&g, &k).values[0], f1_closed(&g, &k).values[0]);
        prop_assert!((f - (f0 + f1)).norm() <= 1e-12 * f0.norm().max(f1.norm()).max(1e-300));
    }

    #[test]
    fn closed_sigma_matches_amplitude(gamma in -0.49f64..0.49, e in 1.001f64..100.0) {
        let g = AngleGrid::uniform(33, PI / 32.0, 63.0 * PI / 32.0, PI / 64.0).unwrap();
        prop_assert!(sigma(&g, &kin(gamma, e)).max_relative_mismatch <= 1e-12);
    }

    #[test]
    fn sigma_is_mirror_symmetric(theta in 0.05f64..PI, gamma in -0.49f64..0.49, e in 1.001f64..100.0) {
        let g = AngleGrid::with_default_cutoff(vec![theta]).unwrap();
        let t = g.thetas()[0];
        let k = kin(gamma, e);
        prop_assert_eq!(sigma_closed_at(t, &k).to_bits(), sigma_closed_at(TAU - t, &k).to_bits());
    }
}

#[test]
fn small_gamma_error_scales_quadratically() {
    let gammas = [1e-3, 3e-3, 1e-2, 3e-2, 1e-1];
    let errs: Vec<f64> = gammas
        .iter()
        .map(|&g| {
            let k = Kinematics::new(g, EnergyInput::Velocity(0.6), CouplingGate::Enforce).unwrap();
            (1..=21)
                .step_by(2)
                .flat_map(|t| [t, -t])
                .map(|t| {
                    let j = AngularMomentum::new(t).unwrap();
                    (s_matrix_exact(j, &k).unwrap().value - s_matrix_small_gamma(j, &k).unwrap().value).norm()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    let slope = (errs[4] / errs[0]).ln() / (gammas[4] / gammas[0]).ln();
    assert!((slope - 2.0).abs() <= 0.1, "slope {slope}");

    let at = |g: f64| {
        let k = Kinematics::new(g, EnergyInput::Velocity(0.6), CouplingGate::Enforce).unwrap();
        let j = AngularMomentum::new(1).unwrap();
        (s_matrix_exact(j, &k).unwrap().value - s_matrix_small_gamma(j, &k).unwrap().value).norm()
    };
    let alpha = coulomb2d::kinematics::FINE_STRUCTURE_ALPHA;
    let factor = at(alpha) / at(alpha / 2.0);
    assert!((3.5..=4.5).contains(&factor), "halving factor {factor}");
}

#[test]
fn small_gamma_error_decays_in_j() {
    let k = kin(0.05, 1.25);
    for sign in [1, -1] {
        let errs: Vec<f64> = (1..=41)
            .step_by(2)
            .map(|t| {
                let j = AngularMomentum::new(sign * t).unwrap();
                (s_matrix_exact(j, &k).unwrap().value - s_matrix_small_gamma(j, &k).unwrap().value).norm()
            })
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    }
}

#[test]
fn forward_behaviour_of_closed_amplitude() {
    let k = kin(0.05, 1.25);
    let g = AngleGrid::new(vec![1e-3, 1e-2, 0.1, 1.0], 1e-3).unwrap();
    let f = f_closed(&g, &k);
    let scaled: Vec<f64> = g.thetas().iter().zip(&f.values).map(|(t, v)| v.norm() * (0.5 * t).sin()).collect();
    let (lo, hi) = scaled.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(lo > 0.0 && hi / lo < 1.5, "{scaled:?}");
}

#[test]
fn f0_vanishes_linearly_in_beta() {
    let g = AngleGrid::with_default_cutoff(vec![PI / 2.0]).unwrap();
    let at = |beta: f64| f0_closed(&g, &Kinematics::from_beta_velocity(beta, 0.6).unwrap()).values[0].norm();
    let slope = (at(1e-4) / at(1e-6)).ln() / 100f64.ln();
    assert!((slope - 1.0).abs() < 1e-3, "slope {slope}");
}

#[test]
fn parallel_and_sequential_sums_are_identical() {
    let k = kin(0.05, 1.25);
    let g = AngleGrid::uniform(9, PI / 8.0, 15.0 * PI / 8.0, PI / 64.0).unwrap();
    let par =
        f_series_exact(&g, &k, &SummationOptions { execution: Execution::Parallel, ..SummationOptions::default() })
            .unwrap();
    let seq =
        f_series_exact(&g, &k, &SummationOptions { execution: Execution::Sequential, ..SummationOptions::default() })
            .unwrap();
    assert_eq!(par, seq);
}

#[test]
fn upper_and_lower_components_give_the_same_phase() {
    let k = kin(0.1, 1.25);
    for two_j in [1, -1, 3, -3, 5, -5] {
        let j = AngularMomentum::new(two_j).unwrap();
        let sol = ode_integrate(j, &k, &linear_grid(100.0, 200.0, 1001), &OdeOptions::default()).unwrap();
        let f = extract_phase(&sol, &FitOptions { component: FitComponent::F, ..FitOptions::default() }).unwrap();
        let g = extract_phase(&sol, &FitOptions { component: FitComponent::G, ..FitOptions::default() }).unwrap();
        assert!(eta_distance_mod_pi(f.eta, g.eta) <= 1e-6, "{two_j}: {} vs {}", f.eta, g.eta);
    }
}
