use num_complex::Complex64;

use super::ode::system_residual;
use super::{channel_normalisation, validate_grid, RadialSolution, RadialSource};
use crate::error::Result;
use crate::kinematics::Kinematics;
use crate::phase_shift::{exponent_s, AngularMomentum};
use crate::specfun::kummer_phi;

struct Parts {
    s: f64,
    a: Complex64,
    b: f64,
    norm_u: Complex64,
    norm_v: Complex64,
}

fn parts(j: AngularMomentum, kin: &Kinematics) -> Result<Parts> {
    let s = exponent_s(j, kin.gamma_coupling)?;
    let aj = channel_normalisation(j, kin)?;
    let a = Complex64::new(s, -kin.beta);
    Ok(Parts { s, a, b: 2.0 * s + 1.0, norm_u: aj, norm_v: aj * a / Complex64::new(j.j(), kin.beta_prime) })
}

/// u = a_j rho^s Phi(s - i beta, 2s + 1, -2i rho),
/// v = a_j (s - i beta) / (j + i beta') rho^s Phi(s - i beta + 1, 2s + 1, -2i rho).
pub fn kummer_radial(j: AngularMomentum, kin: &Kinematics, rho_grid: &[f64]) -> Result<RadialSolution> {
    validate_grid(rho_grid)?;
    let p = parts(j, kin)?;
    let mut u = Vec::with_capacity(rho_grid.len());
    let mut v = Vec::with_capacity(rho_grid.len());
    for &r in rho_grid {
        let z = Complex64::new(0.0, -2.0 * r);
        let power = r.powf(p.s);
        u.push(p.norm_u * power * kummer_phi(p.a, p.b, z)?);
        v.push(p.norm_v * power * kummer_phi(p.a + 1.0, p.b, z)?);
    }
    Ok(RadialSolution::assemble(j, kin, RadialSource::Kummer, rho_grid.to_vec(), u, v))
}

/// Largest relative residual of the first-order radial system for the Kummer
/// solution on the grid, with derivatives from d/dz Phi(a, b, z) = (a/b) Phi(a+1, b+1, z).
pub fn kummer_radial_residual(j: AngularMomentum, kin: &Kinematics, rho_grid: &[f64]) -> Result<f64> {
    validate_grid(rho_grid)?;
    let p = parts(j, kin)?;
    let i = Complex64::i();
    let mut worst = 0.0f64;
    for &r in rho_grid {
        let z = Complex64::new(0.0, -2.0 * r);
        let power = r.powf(p.s);
        let phi0 = kummer_phi(p.a, p.b, z)?;
        let phi1 = kummer_phi(p.a + 1.0, p.b, z)?;
        let dphi0 = p.a / p.b * kummer_phi(p.a + 1.0, p.b + 1.0, z)?;
        let dphi1 = (p.a + 1.0) / p.b * kummer_phi(p.a + 2.0, p.b + 1.0, z)?;
        let u = p.norm_u * power * phi0;
        let v = p.norm_v * power * phi1;
        let du = p.norm_u * power * (p.s / r * phi0 - 2.0 * i * dphi0);
        let dv = p.norm_v * power * (p.s / r * phi1 - 2.0 * i * dphi1);
        worst = worst.max(system_residual(j, kin, r, u, v, du, dv));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{CouplingGate, EnergyInput, FINE_STRUCTURE_ALPHA};
    use crate::radial::log_grid;

    #[test]
    fn origin_behaviour_follows_exponent() {
        let kin = Kinematics::new(0.3, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce).unwrap();
        for two_j in [1, -1, 3] {
            let j = AngularMomentum::new(two_j).unwrap();
            let sol = kummer_radial(j, &kin, &log_grid(1e-4, 1e-3, 5)).unwrap();
            let s = exponent_s(j, kin.gamma_coupling).unwrap();
            assert!((sol.origin_slope().unwrap() - s).abs() < 1e-3);
        }
    }

    #[test]
    fn exact_solution_residual() {
        let kin = Kinematics::new(FINE_STRUCTURE_ALPHA, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce).unwrap();
        let grid = log_grid(1e-3, 500.0, 60);
        for two_j in [1, -1, 5] {
            let r = kummer_radial_residual(AngularMomentum::new(two_j).unwrap(), &kin, &grid).unwrap();
            assert!(r < 1e-8, "{two_j}: {r}");
        }
    }
}
