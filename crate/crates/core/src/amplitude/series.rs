//! Partial-wave sums for the amplitude.
//!
//! f(theta) = -i / sqrt(2 pi k) * sum_j S_j e^{i m theta}, theta != 0,
//! summed with [`abel_richardson`]. The forward delta(theta) contribution of
//! the unit part of S_j is dropped.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::closed::f_closed;
use super::summation::{abel_richardson, SummationOptions};
use super::{AmplitudeGrid, AmplitudeMethod, AngleGrid};
use crate::error::Result;
use crate::exec::map_indexed;
use crate::kinematics::Kinematics;
use crate::phase_shift::{s_matrix_exact, s_matrix_exact_with_gamma_fault, small_gamma_parts, AngularMomentum};
use crate::specfun::{gamma_conj_ratio, gauss_f_unit_with, GaussOptions};

fn prefactor(k: f64) -> Complex64 {
    Complex64::new(0.0, -1.0 / (2.0 * PI * k).sqrt())
}

fn exact_table(kin: &Kinematics, max_two_j: u32, opts: &SummationOptions, fault: f64) -> Result<Vec<Complex64>> {
    let channels: Vec<AngularMomentum> = AngularMomentum::channels(max_two_j).collect();
    let unity = if opts.subtract_unity { 1.0 } else { 0.0 };
    map_indexed(opts.execution, channels.len(), |n| {
        let s = if fault == 0.0 {
            s_matrix_exact(channels[n], kin)?
        } else {
            s_matrix_exact_with_gamma_fault(channels[n], kin, fault)?
        };
        Ok(s.value - unity)
    })
    .into_iter()
    .collect()
}

/// Abel-sums a channel-ordered coefficient table on every grid angle.
fn sum_on_grid(
    grid: &AngleGrid,
    coeffs: &[Complex64],
    kin: &Kinematics,
    opts: &SummationOptions,
) -> (Vec<Complex64>, Vec<f64>, Vec<bool>) {
    let pre = prefactor(kin.k);
    let thetas = grid.thetas();
    let sums = map_indexed(opts.execution, thetas.len(), |n| abel_richardson(coeffs, thetas[n], opts));
    let values = sums.iter().map(|s| pre * s.value).collect();
    let diags: Vec<f64> = sums.iter().map(|s| pre.norm() * s.diagnostic).collect();
    let converged = diags.iter().map(|&d| d <= opts.diag_tol).collect();
    (values, diags, converged)
}

/// Abel-regularised sum over exact S-matrix elements.
pub fn f_series_exact(grid: &AngleGrid, kin: &Kinematics, opts: &SummationOptions) -> Result<AmplitudeGrid> {
    f_series_with_fault(grid, kin, opts, 0.0)
}

/// [`f_series_exact`] with the log-gamma phase perturbed by `fault`.
#[doc(hidden)]
pub fn f_series_with_fault(
    grid: &AngleGrid,
    kin: &Kinematics,
    opts: &SummationOptions,
    fault: f64,
) -> Result<AmplitudeGrid> {
    opts.validate()?;
    let table = exact_table(kin, opts.channels_for(grid.thetas()), opts, fault)?;
    let (values, diagnostics, converged) = sum_on_grid(grid, &table, kin, opts);
    Ok(AmplitudeGrid { grid: grid.clone(), values, method: AmplitudeMethod::SeriesExact, diagnostics, converged })
}

/// Closed small-coupling amplitude plus the Abel-summed residual
/// sum_j (S_exact - S_small) e^{i m theta}, whose terms decay in |j|.
pub fn f_series_split(grid: &AngleGrid, kin: &Kinematics, opts: &SummationOptions) -> Result<AmplitudeGrid> {
    opts.validate()?;
    let channels: Vec<AngularMomentum> = AngularMomentum::channels(opts.channels_for(grid.thetas())).collect();
    let residual: Vec<Complex64> = map_indexed(opts.execution, channels.len(), |n| {
        let j = channels[n];
        Ok(s_matrix_exact(j, kin)?.value - small_gamma_parts(j, kin).total())
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let (values, diagnostics, converged) = sum_on_grid(grid, &residual, kin, opts);
    let closed = f_closed(grid, kin);
    let values = values.iter().zip(&closed.values).map(|(r, c)| r + c).collect();
    Ok(AmplitudeGrid {
        grid: grid.clone(),
        values,
        method: AmplitudeMethod::SeriesF1PlusClosedF0,
        diagnostics,
        converged,
    })
}

/// Dispatch on method; closed-form methods ignore the summation options.
pub fn f_series(
    grid: &AngleGrid,
    kin: &Kinematics,
    method: AmplitudeMethod,
    opts: &SummationOptions,
) -> Result<AmplitudeGrid> {
    match method {
        AmplitudeMethod::SeriesExact => f_series_exact(grid, kin, opts),
        AmplitudeMethod::SeriesF1PlusClosedF0 => f_series_split(grid, kin, opts),
        AmplitudeMethod::ClosedForm => Ok(f_closed(grid, kin)),
        AmplitudeMethod::ClosedF0 => Ok(super::f0_closed(grid, kin)),
        AmplitudeMethod::ClosedF1 => Ok(super::f1_closed(grid, kin)),
        AmplitudeMethod::SeriesF1 => f1_series(grid, kin, &GaussOptions::default()),
    }
}

/// Relativistic correction from its two hypergeometric series,
///
/// f1 = -(beta - beta') / sqrt(2 pi k) * Gamma(1/2 - i beta) / Gamma(3/2 + i beta)
///      * [F(1, 1/2 - i beta; 3/2 + i beta; e^{i theta}) - e^{-i theta} F(...; e^{-i theta})].
pub fn f1_series(grid: &AngleGrid, kin: &Kinematics, opts: &GaussOptions) -> Result<AmplitudeGrid> {
    let beta = kin.beta;
    let gap = kin.beta_gap();
    let n = grid.len();
    if gap == 0.0 {
        return Ok(AmplitudeGrid::exact(grid.clone(), vec![Complex64::new(0.0, 0.0); n], AmplitudeMethod::SeriesF1));
    }
    let a2 = Complex64::new(0.5, -beta);
    let b1 = Complex64::new(1.5, beta);
    let ratio = gamma_conj_ratio(0.5, beta) / Complex64::new(0.5, beta);
    let scale = -gap / (2.0 * PI * kin.k).sqrt() * ratio;
    let mut values = Vec::with_capacity(n);
    let mut diagnostics = Vec::with_capacity(n);
    for &theta in grid.thetas() {
        let w = Complex64::from_polar(1.0, theta);
        let plus = gauss_f_unit_with(a2, b1, w, opts)?;
        let minus = gauss_f_unit_with(a2, b1, w.conj(), opts)?;
        values.push(scale * (plus.value - w.conj() * minus.value));
        diagnostics.push(scale.norm() * (plus.error + minus.error));
    }
    let converged = diagnostics
        .iter()
        .zip(&values)
        .map(|(d, v): (&f64, &Complex64)| *d <= 1e-8 * v.norm().max(f64::MIN_POSITIVE))
        .collect();
    Ok(AmplitudeGrid { grid: grid.clone(), values, method: AmplitudeMethod::SeriesF1, diagnostics, converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{CouplingGate, EnergyInput, FINE_STRUCTURE_ALPHA};

    fn grid() -> AngleGrid {
        AngleGrid::with_default_cutoff(vec![PI / 6.0, PI / 2.0, PI, 1.5 * PI]).unwrap()
    }

    #[test]
    fn free_particle_amplitude_vanishes() {
        let kin = Kinematics::new(0.0, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce).unwrap();
        let f = f_series_exact(&grid(), &kin, &SummationOptions::default()).unwrap();
        for (v, d) in f.values.iter().zip(&f.diagnostics) {
            assert!(v.norm() <= 3.0 * d + 1e-12, "{v} vs {d}");
            assert!(v.norm() < 1e-7);
        }
    }

    #[test]
    fn unit_subtraction_changes_nothing_off_forward() {
        let kin = Kinematics::new(FINE_STRUCTURE_ALPHA, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce).unwrap();
        let opts = SummationOptions::default();
        let plain = f_series_exact(&grid(), &kin, &opts).unwrap();
        let sub = f_series_exact(&grid(), &kin, &SummationOptions { subtract_unity: true, ..opts }).unwrap();
        for n in 0..plain.len() {
            let tol = 3.0 * (plain.diagnostics[n] + sub.diagnostics[n]) + 1e-12;
            assert!((plain.values[n] - sub.values[n]).norm() <= tol);
        }
    }

    #[test]
    fn f1_series_matches_closed_form() {
        let kin = Kinematics::from_beta_velocity(0.2, 0.6).unwrap();
        let g = AngleGrid::uniform(31, PI / 16.0, 31.0 * PI / 16.0, PI / 64.0).unwrap();
        let series = f1_series(&g, &kin, &GaussOptions::default()).unwrap();
        let closed = super::super::f1_closed(&g, &kin);
        for n in 0..g.len() {
            let rel = (series.values[n] - closed.values[n]).norm() / closed.values[n].norm();
            assert!(rel < 1e-8, "theta {}: {rel}", g.thetas()[n]);
        }
    }
}
