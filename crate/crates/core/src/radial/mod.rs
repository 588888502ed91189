//! Radial solutions of the partial-wave Dirac equations and phase extraction.
//!
//! With rho = k r and f = e^{i rho}(u + v)/2, g = -(i/2) sqrt(k2/k1) e^{i rho}(u - v),
//! the radial equations become the first-order system
//!
//!   u' = (i beta / rho) u + ((i beta' + j) / rho) v,
//!   v' = -2i v - (i beta / rho) v - ((i beta' - j) / rho) u.
//!
//! Two independent routes to the regular solution are provided, the Kummer
//! form and direct adaptive integration, and the phase shift is read off
//! from a least-squares fit to the asymptotic waves.

mod kummer_form;
mod ode;
mod phase;

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::Kinematics;
use crate::phase_shift::{exponent_s, AngularMomentum};
use crate::specfun::log_gamma;

pub use kummer_form::{kummer_radial, kummer_radial_residual};
pub use ode::{ode_integrate, system_residual, OdeInit, OdeOptions};
pub use phase::{eta_distance_mod_pi, extract_phase, oracle_phase, FitComponent, FitOptions, PhaseExtraction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialSource {
    Kummer,
    Ode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution {
    pub j: AngularMomentum,
    pub kin: Kinematics,
    pub source: RadialSource,
    pub rho: Vec<f64>,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub f: Vec<Complex64>,
    pub g: Vec<Complex64>,
}

impl RadialSolution {
    pub(crate) fn assemble(
        j: AngularMomentum,
        kin: &Kinematics,
        source: RadialSource,
        rho: Vec<f64>,
        u: Vec<Complex64>,
        v: Vec<Complex64>,
    ) -> Self {
        let lower = (kin.k2 / kin.k1).sqrt();
        let (f, g) = rho
            .iter()
            .zip(u.iter().zip(&v))
            .map(|(&r, (&uu, &vv))| {
                let e = Complex64::from_polar(1.0, r);
                (0.5 * e * (uu + vv), Complex64::new(0.0, -0.5 * lower) * e * (uu - vv))
            })
            .unzip();
        RadialSolution { j, kin: *kin, source, rho, u, v, f, g }
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// Slope of ln|u| against ln rho between the first grid point and the
    /// last point within one decade of it.
    pub fn origin_slope(&self) -> Option<f64> {
        let r0 = *self.rho.first()?;
        let last = self.rho.iter().rposition(|&r| r <= 10.0 * r0 * (1.0 + 1e-12))?;
        if last == 0 {
            return None;
        }
        let num = self.u[last].norm().ln() - self.u[0].norm().ln();
        Some(num / (self.rho[last] / r0).ln())
    }
}

/// Overall normalisation A = i sqrt((E + 1) / 2E) sqrt(2 / (pi k)).
pub fn amplitude_normalisation(kin: &Kinematics) -> Complex64 {
    let e = kin.energy_ratio;
    Complex64::new(0.0, ((e + 1.0) / (2.0 * e)).sqrt() * (2.0 / (PI * kin.k)).sqrt())
}

/// Channel constant a_j = A 2^s (j + i beta') Gamma(s - i beta) / Gamma(2s + 1)
/// * exp(beta pi / 2 + i m pi - i s pi / 2 + i pi / 4).
pub fn channel_normalisation(j: AngularMomentum, kin: &Kinematics) -> Result<Complex64> {
    let s = exponent_s(j, kin.gamma_coupling)?;
    let log_mag = log_gamma(Complex64::new(s, -kin.beta))? - log_gamma(Complex64::new(2.0 * s + 1.0, 0.0))?;
    let m = j.m() as f64;
    let expo = log_mag + Complex64::new(s * LN_2 + 0.5 * kin.beta * PI, m * PI - 0.5 * s * PI + 0.25 * PI);
    Ok(amplitude_normalisation(kin) * Complex64::new(j.j(), kin.beta_prime) * expo.exp())
}

pub(crate) fn validate_grid(rho: &[f64]) -> Result<()> {
    if rho.is_empty() {
        return Err(Error::InvalidGrid("empty rho grid".into()));
    }
    for (n, &r) in rho.iter().enumerate() {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidGrid(format!("rho #{n} = {r} is not positive")));
        }
        if n > 0 && r <= rho[n - 1] {
            return Err(Error::InvalidGrid(format!("rho grid not strictly increasing at #{n}")));
        }
    }
    Ok(())
}

/// Logarithmically spaced points on [lo, hi], both included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut out: Vec<f64> = (0..count).map(|n| (a + (b - a) * n as f64 / (count - 1) as f64).exp()).collect();
    out[0] = lo;
    out[count - 1] = hi;
    out
}

/// Evenly spaced points on [lo, hi], both included.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let step = (hi - lo) / (count - 1) as f64;
    let mut out: Vec<f64> = (0..count).map(|n| lo + step * n as f64).collect();
    out[count - 1] = hi;
    out
}
