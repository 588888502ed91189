//! Small-coupling closed forms and cross sections.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::folded;
use super::{AmplitudeGrid, AmplitudeMethod, AngleGrid};
use crate::error::{Error, Result};
use crate::kinematics::Kinematics;
use crate::specfun::log_gamma;

/// Gamma(1/2 - i beta) / Gamma(i beta), written as
/// i beta Gamma(1/2 - i beta) / Gamma(1 + i beta) so it is smooth through beta = 0.
pub(crate) fn closed_strength(beta: f64) -> Complex64 {
    let num = log_gamma(Complex64::new(0.5, -beta)).expect("Gamma has no poles off the real axis");
    let den = log_gamma(Complex64::new(1.0, beta)).expect("Gamma has no poles at Re z = 1");
    Complex64::new(0.0, beta) * (num - den).exp()
}

/// sin(theta / 2) and exp(i beta ln sin^2(theta / 2)), both symmetric under
/// theta -> 2 pi - theta.
fn common_factors(theta: f64, beta: f64) -> (f64, Complex64) {
    let h = (0.5 * folded(theta)).sin();
    (h, Complex64::from_polar(1.0, 2.0 * beta * h.ln()))
}

fn f0_at(theta: f64, strength: Complex64, kin: &Kinematics) -> Complex64 {
    let (h, log_phase) = common_factors(theta, kin.beta);
    -Complex64::i() * strength * log_phase / ((2.0 * kin.k).sqrt() * h)
}

fn f1_at(theta: f64, strength: Complex64, kin: &Kinematics) -> Complex64 {
    let (_, log_phase) = common_factors(theta, kin.beta);
    -strength * kin.relativistic_factor() * Complex64::from_polar(1.0, -0.5 * theta) * log_phase / (2.0 * kin.k).sqrt()
}

/// Nonrelativistic part of the closed-form amplitude.
pub fn f0_closed(grid: &AngleGrid, kin: &Kinematics) -> AmplitudeGrid {
    let strength = closed_strength(kin.beta);
    let values = grid.thetas().iter().map(|&t| f0_at(t, strength, kin)).collect();
    AmplitudeGrid::exact(grid.clone(), values, AmplitudeMethod::ClosedF0)
}

/// Relativistic correction; vanishes as v/c -> 0 through the factor 1 - beta'/beta.
pub fn f1_closed(grid: &AngleGrid, kin: &Kinematics) -> AmplitudeGrid {
    let strength = closed_strength(kin.beta);
    let values = grid.thetas().iter().map(|&t| f1_at(t, strength, kin)).collect();
    AmplitudeGrid::exact(grid.clone(), values, AmplitudeMethod::ClosedF1)
}

/// f0 + f1, evaluated as f0 (1 + f1/f0) with
/// 1 + f1/f0 = cos^2(theta/2) + sin^2(theta/2) / E - i sin(theta/2) cos(theta/2) (1 - beta'/beta),
/// which avoids the cancellation between f0 and f1 near theta = pi at high energy.
pub fn f_closed(grid: &AngleGrid, kin: &Kinematics) -> AmplitudeGrid {
    let strength = closed_strength(kin.beta);
    let values = grid
        .thetas()
        .iter()
        .map(|&t| {
            let half = 0.5 * folded(t);
            let (h, c) = (half.sin(), half.cos());
            let c = if t > PI { -c } else { c };
            let factor = Complex64::new(c * c + h * h / kin.energy_ratio, -h * c * kin.relativistic_factor());
            f0_at(t, strength, kin) * factor
        })
        .collect();
    AmplitudeGrid::exact(grid.clone(), values, AmplitudeMethod::ClosedForm)
}

/// 1 - v^2 sin^2(theta/2), written as cos^2 + sin^2 (1 - v^2) so it stays accurate near theta = pi.
fn spin_factor(theta: f64, kin: &Kinematics) -> (f64, f64) {
    let half = 0.5 * folded(theta);
    let (h, c) = (half.sin(), half.cos());
    let inv_e = 1.0 / kin.energy_ratio;
    (h * h, c * c + h * h * inv_e * inv_e)
}

/// beta tanh(beta pi) / (2 k sin^2(theta/2)) * (1 - v^2 sin^2(theta/2)).
///
/// Bitwise symmetric under theta -> 2 pi - theta for angles taken from an
/// [`AngleGrid`].
pub fn sigma_closed_at(theta: f64, kin: &Kinematics) -> f64 {
    let (h2, spin) = spin_factor(theta, kin);
    kin.beta * (kin.beta * PI).tanh() / (2.0 * kin.k * h2) * spin
}

/// The same cross section in classical variables (hbar = c = 1):
/// kappa tanh(pi kappa / v) / (2 mu v^2 sin^2) * (1 - v^2 sin^2) * sqrt(1 - v^2).
pub fn sigma_classical_form(theta: f64, v_c: f64, kappa: f64, mu: f64) -> Result<f64> {
    if !(v_c.is_finite() && v_c > 0.0 && v_c < 1.0) {
        return Err(Error::InvalidVelocity(v_c));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidParameter { name: "mu", reason: format!("mass {mu} must be positive") });
    }
    let h = (0.5 * folded(theta)).sin();
    if h == 0.0 || !h.is_finite() {
        return Err(Error::InvalidGrid(format!("theta = {theta} is in the forward direction")));
    }
    let h2 = h * h;
    let v2 = v_c * v_c;
    Ok(kappa * (PI * kappa / v_c).tanh() / (2.0 * mu * v2 * h2) * (1.0 - v2 * h2) * ((1.0 - v_c) * (1.0 + v_c)).sqrt())
}

/// Lowest order in beta: pi beta^2 / (2 k sin^2(theta/2)) * (1 - v^2 sin^2(theta/2)).
pub fn born_sigma(theta: f64, kin: &Kinematics) -> f64 {
    let (h2, spin) = spin_factor(theta, kin);
    PI * kin.beta * kin.beta / (2.0 * kin.k * h2) * spin
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSection {
    pub grid: AngleGrid,
    /// Closed formula.
    pub sigma: Vec<f64>,
    /// |f_closed|^2 on the same grid.
    pub from_amplitude: Vec<f64>,
    /// max |from_amplitude / sigma - 1|.
    pub max_relative_mismatch: f64,
}

pub fn sigma(grid: &AngleGrid, kin: &Kinematics) -> CrossSection {
    let sig: Vec<f64> = grid.thetas().iter().map(|&t| sigma_closed_at(t, kin)).collect();
    let amp = f_closed(grid, kin).cross_section();
    let max_relative_mismatch =
        sig.iter().zip(&amp).map(|(s, a)| if *s == 0.0 { a.abs() } else { (a / s - 1.0).abs() }).fold(0.0, f64::max);
    CrossSection { grid: grid.clone(), sigma: sig, from_amplitude: amp, max_relative_mismatch }
}
