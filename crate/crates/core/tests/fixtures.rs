//! Comparisons against extended-precision reference values in
//! `tests/fixtures/reference.json` (regenerate with `tools/gen_fixtures.py`).

use std::f64::consts::PI;
use std::sync::OnceLock;

use coulomb2d::amplitude::{f0_closed, f1_closed, f1_series, f_closed, sigma_classical_form, AngleGrid};
use coulomb2d::kinematics::{CouplingGate, EnergyInput, Kinematics, FINE_STRUCTURE_ALPHA};
use coulomb2d::phase_shift::{exponent_s, s_matrix_exact, s_matrix_nonrel, s_matrix_small_gamma, AngularMomentum};
use coulomb2d::radial::kummer_radial;
use coulomb2d::specfun::{gauss_f_unit, kummer_phi, kummer_recurrence_check, log_gamma, GaussOptions};
use num_complex::Complex64;
use serde_json::Value;

fn fixtures() -> &'static Value {
    static DATA: OnceLock<Value> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(include_str!("fixtures/reference.json")).expect("valid fixture json"))
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn complex(v: &Value) -> Complex64 {
    Complex64::new(num(&v[0]), num(&v[1]))
}

fn rows(key: &str) -> Vec<Vec<f64>> {
    fixtures()[key].as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(num).collect()).collect()
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

fn z1() -> Kinematics {
    Kinematics::new(FINE_STRUCTURE_ALPHA, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce).unwrap()
}

#[test]
fn log_gamma_table() {
    let mut worst = 0.0f64;
    for r in rows("log_gamma") {
        let want = Complex64::new(r[2], r[3]);
        let got = log_gamma(Complex64::new(r[0], r[1])).unwrap();
        // relative to |ln Gamma| but never tighter than the real-part scale near zeros of ln Gamma
        let scale = want.norm().max(1.0);
        let err = (got - want).norm() / scale;
        assert!(err < 1e-13, "z = {} + {}i: {got} vs {want} ({err:.2e})", r[0], r[1]);
        worst = worst.max(err);
    }
    println!("log_gamma worst {worst:.2e}");
}

#[test]
fn log_gamma_example() {
    let got = log_gamma(Complex64::new(3.7, 2.1)).unwrap();
    assert!(rel(got, complex(&fixtures()["log_gamma_3p7_2p1i"])) < 1e-13);
}

#[test]
fn kummer_table() {
    for r in rows("kummer") {
        let want = Complex64::new(r[5], r[6]);
        let got = kummer_phi(Complex64::new(r[0], r[1]), r[2], Complex64::new(r[3], r[4])).unwrap();
        assert!(rel(got, want) < 1e-10, "a = {} {}i, b = {}, z = {}i: {got} vs {want}", r[0], r[1], r[2], r[4]);
    }
    let got = kummer_phi(Complex64::new(0.5, -0.2), 2.0, Complex64::new(0.0, -100.0)).unwrap();
    assert!(rel(got, complex(&fixtures()["kummer_0p5m0p2i_2_m100i"])) < 1e-10);
}

#[test]
fn kummer_recurrence_against_reference_values() {
    let case = &fixtures()["kummer_recurrence_case"];
    let a = Complex64::new(0.5, -0.3);
    let z = Complex64::new(0.0, -10.0);
    let phi = complex(&case["phi"]);
    let phi_a1 = complex(&case["phi_a1"]);
    let dphi = a / 2.2 * complex(&case["phi_a1_b1"]);
    let reference_residual = ((z * dphi + a * phi) - a * phi_a1).norm() / (a * phi_a1).norm();
    assert!(reference_residual < 1e-14);
    assert!(kummer_recurrence_check(a, 2.2, z).unwrap() <= 1e-8);
    assert!(rel(kummer_phi(a, 2.2, z).unwrap(), phi) < 1e-10);
    assert!(rel(kummer_phi(a + 1.0, 3.2, z).unwrap(), complex(&case["phi_a1_b1"])) < 1e-10);
}

#[test]
fn gauss_on_unit_circle() {
    for r in rows("gauss_unit") {
        let (beta, theta) = (r[0], r[1]);
        let want = Complex64::new(r[2], r[3]);
        let got =
            gauss_f_unit(Complex64::new(0.5, -beta), Complex64::new(1.5, beta), Complex64::from_polar(1.0, theta));
        match got {
            Ok(v) => {
                let tol = if theta.min(2.0 * PI - theta) >= PI / 32.0 - 1e-12 { 1e-9 } else { 1e-6 };
                assert!(rel(v, want) < tol, "beta {beta} theta {theta}: {v} vs {want}");
            }
            Err(e) => panic!("beta {beta} theta {theta}: {e}"),
        }
    }
    let got = gauss_f_unit(Complex64::new(0.5, -0.1), Complex64::new(1.5, 0.1), Complex64::new(0.0, 1.0)).unwrap();
    assert!(rel(got, complex(&fixtures()["gauss_beta0p1_w_i"])) < 1e-9);
}

#[test]
fn kinematics_near_threshold() {
    let f = &fixtures()["kinematics_near_threshold"];
    let k =
        Kinematics::new(FINE_STRUCTURE_ALPHA, EnergyInput::EnergyRatio(num(&f["energy_ratio"])), CouplingGate::Enforce)
            .unwrap();
    let close = |a: f64, b: f64, tol: f64| ((a - b) / b).abs() < tol;
    assert!(close(k.v_over_c, num(&f["v_over_c"]), 1e-14));
    assert!(close(k.k, num(&f["k"]), 1e-14));
    assert!(close(k.beta, num(&f["beta"]), 1e-14));
    assert!(close(k.beta_prime, num(&f["beta_prime"]), 1e-14));
    assert!(close(k.beta_prime / k.beta, num(&f["bp_over_b"]), 1e-14));
}

#[test]
fn exponent_for_three_halves() {
    let s = exponent_s(AngularMomentum::new(3).unwrap(), FINE_STRUCTURE_ALPHA).unwrap();
    assert!((s - num(&fixtures()["exponent_s_3half_alpha"])).abs() < 1e-15);
}

#[test]
fn s_matrix_examples() {
    let exact = s_matrix_exact(AngularMomentum::new(1).unwrap(), &z1()).unwrap();
    assert!(rel(exact.value, complex(&fixtures()["s_exact_half_z1_e1p25"])) < 1e-13);

    let k = Kinematics::new(0.01, EnergyInput::Velocity(0.6), CouplingGate::Enforce).unwrap();
    let small = s_matrix_small_gamma(AngularMomentum::new(-1).unwrap(), &k).unwrap();
    assert!(rel(small.value, complex(&fixtures()["s_small_mhalf_g0p01_v0p6"])) < 1e-13);

    assert!(rel(s_matrix_nonrel(0, 0.2), complex(&fixtures()["s_nonrel_m0_b0p2"])) < 1e-13);
}

#[test]
fn s_matrix_sweep() {
    for r in rows("s_matrix_sweep") {
        let k = Kinematics::new(r[0], EnergyInput::EnergyRatio(r[1]), CouplingGate::Enforce).unwrap();
        let j = AngularMomentum::new(r[2] as i32).unwrap();
        let exact = s_matrix_exact(j, &k).unwrap().value;
        let small = s_matrix_small_gamma(j, &k).unwrap().value;
        let label = format!("gamma {} E {} two_j {}", r[0], r[1], r[2]);
        assert!((exact - Complex64::new(r[3], r[4])).norm() < 1e-12, "{label}: exact {exact}");
        assert!((small - Complex64::new(r[5], r[6])).norm() < 1e-12, "{label}: small {small}");
    }
}

#[test]
fn closed_form_amplitudes() {
    let kb = Kinematics::from_beta_velocity(0.2, 0.6).unwrap();
    let pi = AngleGrid::with_default_cutoff(vec![PI]).unwrap();
    let half = AngleGrid::with_default_cutoff(vec![PI / 2.0]).unwrap();
    assert!(rel(f0_closed(&pi, &kb).values[0], complex(&fixtures()["f0_closed_pi_b0p2_k0p75"])) < 1e-13);
    assert!(rel(f1_closed(&half, &z1()).values[0], complex(&fixtures()["f1_closed_halfpi_z1_e1p25"])) < 1e-12);
    assert!(rel(f_closed(&pi, &z1()).values[0], complex(&fixtures()["f_closed_pi_z1_e1p25"])) < 1e-12);
    let series = f1_series(&pi, &kb, &GaussOptions::default()).unwrap();
    assert!(rel(series.values[0], complex(&fixtures()["f1_series_pi_b0p2_v0p6"])) < 1e-8);
}

#[test]
fn classical_cross_section() {
    let got = sigma_classical_form(PI / 2.0, 0.6, FINE_STRUCTURE_ALPHA, 1.0).unwrap();
    let want = num(&fixtures()["sigma_classical_halfpi_v0p6_alpha"]);
    assert!(((got - want) / want).abs() < 1e-13);
}

#[test]
fn radial_kummer_solution_at_unit_rho() {
    let sol = kummer_radial(AngularMomentum::new(1).unwrap(), &z1(), &[1.0]).unwrap();
    assert!(rel(sol.u[0], complex(&fixtures()["radial_u_rho1_half_z1_e1p25"])) < 1e-10);
    assert!(rel(sol.v[0], complex(&fixtures()["radial_v_rho1_half_z1_e1p25"])) < 1e-10);
}
