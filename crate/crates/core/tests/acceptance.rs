//! Acceptance criteria 1 to 8, one test each.
//!
//! Every test prints a single PASS/FAIL line, plus the failing checks.
//! Run with `cargo test --release -p coulomb2d --test acceptance -- --nocapture`.

use coulomb2d::verify::{run_criterion, VerifyOptions};

fn criterion(n: u8) {
    let report = run_criterion(n, &VerifyOptions::default()).expect("criterion ran");
    println!("{}", report.summary());
    for c in report.failed_checks() {
        println!("    failed {} [{}]: {:.3e} > {:.3e}", c.name, c.detail, c.value, c.tolerance);
    }
    assert!(report.passed, "criterion {n} failed");
}

#[test]
fn criterion_1_unitarity() {
    criterion(1);
}

#[test]
fn criterion_2_radial_oracle() {
    criterion(2);
}

#[test]
fn criterion_3_closed_form_self_consistency() {
    criterion(3);
}

#[test]
fn criterion_4_series_to_closed_form() {
    criterion(4);
}

#[test]
fn criterion_5_relativistic_correction_identity() {
    criterion(5);
}

#[test]
fn criterion_6_nonrelativistic_limit() {
    criterion(6);
}

#[test]
fn criterion_7_symmetries_and_born_limit() {
    criterion(7);
}

#[test]
fn criterion_8_special_function_kernel() {
    criterion(8);
}
