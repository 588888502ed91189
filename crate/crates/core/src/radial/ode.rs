//! Adaptive Dormand-Prince 5(4) integration of the radial system in rho.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{channel_normalisation, validate_grid, RadialSolution, RadialSource};
use crate::error::{Error, Result};
use crate::kinematics::Kinematics;
use crate::phase_shift::{exponent_s, AngularMomentum};

const SERIES_TERMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OdeInit {
    /// Regular solution from the truncated series at rho0, normalised like
    /// [`super::kummer_radial`].
    Series,
    /// Explicit (u, v) at rho0.
    Values { u: Complex64, v: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeOptions {
    pub rho0: f64,
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub init: OdeInit,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rho0: 1e-4, rtol: 1e-11, atol: 1e-14, max_steps: 2_000_000, init: OdeInit::Series }
    }
}

#[derive(Clone, Copy)]
struct System {
    beta: f64,
    beta_p: f64,
    j: f64,
}

type State = [Complex64; 2];

impl System {
    fn rhs(&self, rho: f64, y: &State) -> State {
        let i = Complex64::i();
        let inv = 1.0 / rho;
        let (u, v) = (y[0], y[1]);
        [
            i * self.beta * inv * u + (i * self.beta_p + self.j) * inv * v,
            -2.0 * i * v - i * self.beta * inv * v - (i * self.beta_p - self.j) * inv * u,
        ]
    }
}

/// Relative residual of the radial system for given values and derivatives.
pub fn system_residual(
    j: AngularMomentum,
    kin: &Kinematics,
    rho: f64,
    u: Complex64,
    v: Complex64,
    du: Complex64,
    dv: Complex64,
) -> f64 {
    let i = Complex64::i();
    let jj = j.j();
    let t_u = [du, -i * kin.beta / rho * u, -(i * kin.beta_prime + jj) / rho * v];
    let t_v = [dv, 2.0 * i * v, i * kin.beta / rho * v, (i * kin.beta_prime - jj) / rho * u];
    let rel = |t: &[Complex64]| {
        let scale: f64 = t.iter().map(|x| x.norm()).sum();
        if scale == 0.0 {
            0.0
        } else {
            t.iter().sum::<Complex64>().norm() / scale
        }
    };
    rel(&t_u).max(rel(&t_v))
}

fn series_start(j: AngularMomentum, kin: &Kinematics, rho0: f64) -> Result<State> {
    let s = exponent_s(j, kin.gamma_coupling)?;
    let aj = channel_normalisation(j, kin)?;
    let a = Complex64::new(s, -kin.beta);
    let b = 2.0 * s + 1.0;
    let z = Complex64::new(0.0, -2.0 * rho0);
    let truncated = |a: Complex64| {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 0..SERIES_TERMS - 1 {
            let nf = n as f64;
            term = term * (a + nf) / ((b + nf) * (nf + 1.0)) * z;
            sum += term;
        }
        sum
    };
    let power = rho0.powf(s);
    let u = aj * power * truncated(a);
    let v = aj * a / Complex64::new(j.j(), kin.beta_prime) * power * truncated(a + 1.0);
    Ok([u, v])
}

// Dormand-Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

struct Step {
    y: State,
    k_last: State,
    err: f64,
}

fn dp_step(sys: &System, rho: f64, y: &State, k1: &State, h: f64, opts: &OdeOptions) -> Step {
    let mut k = [[Complex64::new(0.0, 0.0); 2]; 7];
    k[0] = *k1;
    for stage in 1..7 {
        let mut yy = *y;
        for (prev, kp) in k.iter().enumerate().take(stage) {
            let w = A[stage][prev];
            if w != 0.0 {
                for c in 0..2 {
                    yy[c] += h * w * kp[c];
                }
            }
        }
        k[stage] = sys.rhs(rho + C[stage] * h, &yy);
    }
    // the last stage is evaluated at the 5th-order solution (FSAL)
    let mut y_new = *y;
    for (stage, ks) in k.iter().enumerate().take(6) {
        for c in 0..2 {
            y_new[c] += h * A[6][stage] * ks[c];
        }
    }
    let mut err = 0.0f64;
    for c in 0..2 {
        let mut e = Complex64::new(0.0, 0.0);
        for (stage, ks) in k.iter().enumerate() {
            e += h * E[stage] * ks[c];
        }
        let scale = opts.atol + opts.rtol * y[c].norm().max(y_new[c].norm());
        err = err.max(e.norm() / scale);
    }
    Step { y: y_new, k_last: k[6], err }
}

/// Integrates the regular solution from `opts.rho0` and samples it on `rho_grid`.
pub fn ode_integrate(
    j: AngularMomentum,
    kin: &Kinematics,
    rho_grid: &[f64],
    opts: &OdeOptions,
) -> Result<RadialSolution> {
    validate_grid(rho_grid)?;
    if !(opts.rho0 > 0.0 && opts.rho0 <= rho_grid[0]) {
        return Err(Error::InvalidGrid(format!(
            "rho grid starts at {} below the starting point rho0 = {}",
            rho_grid[0], opts.rho0
        )));
    }
    if !(opts.rtol > 0.0 && opts.atol >= 0.0) {
        return Err(Error::InvalidParameter { name: "rtol", reason: "tolerances must be positive".into() });
    }
    let sys = System { beta: kin.beta, beta_p: kin.beta_prime, j: j.j() };
    let mut y = match opts.init {
        OdeInit::Series => series_start(j, kin, opts.rho0)?,
        OdeInit::Values { u, v } => {
            exponent_s(j, kin.gamma_coupling)?;
            [u, v]
        }
    };
    let mut rho = opts.rho0;
    let mut k1 = sys.rhs(rho, &y);
    let mut h = 0.01 * rho;
    let mut steps = 0usize;
    let mut u_out = Vec::with_capacity(rho_grid.len());
    let mut v_out = Vec::with_capacity(rho_grid.len());

    for &target in rho_grid {
        while rho < target {
            let remaining = target - rho;
            let clipped = h >= remaining;
            let h_try = if clipped { remaining } else { h };
            let step = dp_step(&sys, rho, &y, &k1, h_try, opts);
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::NonConvergence {
                    what: "radial integration step budget",
                    achieved: rho,
                    tol: target,
                });
            }
            let factor = if step.err == 0.0 { 5.0 } else { (0.9 * step.err.powf(-0.2)).clamp(0.2, 5.0) };
            if step.err <= 1.0 {
                rho = if clipped { target } else { rho + h_try };
                y = step.y;
                k1 = step.k_last;
                // a step shortened only to land on a grid point says little about the next one
                if !clipped || factor < 1.0 {
                    h = h_try * factor;
                }
            } else {
                h = h_try * factor;
            }
            if h < 1e-14 * rho {
                return Err(Error::StepSizeUnderflow { rho, h });
            }
        }
        u_out.push(y[0]);
        v_out.push(y[1]);
    }
    Ok(RadialSolution::assemble(j, kin, RadialSource::Ode, rho_grid.to_vec(), u_out, v_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{CouplingGate, EnergyInput, FINE_STRUCTURE_ALPHA};
    use crate::radial::kummer_radial;

    fn kin(g: f64) -> Kinematics {
        Kinematics::new(g, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce).unwrap()
    }

    #[test]
    fn agrees_with_kummer_form() {
        let k = kin(FINE_STRUCTURE_ALPHA);
        let j = AngularMomentum::new(1).unwrap();
        let grid = [1.0, 10.0, 50.0];
        let ode = ode_integrate(j, &k, &grid, &OdeOptions::default()).unwrap();
        let exact = kummer_radial(j, &k, &grid).unwrap();
        for ((rho, a), b) in grid.iter().zip(&ode.u).zip(&exact.u) {
            let rel = (a - b).norm() / b.norm();
            assert!(rel < 1e-7, "rho {rho}: {rel}");
        }
    }

    #[test]
    fn linear_in_initial_data() {
        let k = kin(0.1);
        let j = AngularMomentum::new(-3).unwrap();
        let base = series_start(j, &k, 1e-4).unwrap();
        let run = |scale: f64| {
            let opts = OdeOptions {
                init: OdeInit::Values { u: base[0] * scale, v: base[1] * scale },
                atol: 0.0,
                ..OdeOptions::default()
            };
            ode_integrate(j, &k, &[5.0, 20.0], &opts).unwrap()
        };
        let one = run(1.0);
        let two = run(2.0);
        for n in 0..2 {
            assert!((two.u[n] - 2.0 * one.u[n]).norm() <= 1e-9 * one.u[n].norm());
        }
    }

    #[test]
    fn free_limit_matches_free_solution() {
        let k = kin(0.0);
        let j = AngularMomentum::new(3).unwrap();
        let grid = [1.0, 30.0, 100.0];
        let sol = ode_integrate(j, &k, &grid, &OdeOptions::default()).unwrap();
        let exact = kummer_radial(j, &k, &grid).unwrap();
        for n in 0..grid.len() {
            assert!((sol.u[n] - exact.u[n]).norm() < 1e-7 * exact.u[n].norm());
        }
        // bounded, non-decaying waves
        assert!(sol.u[2].norm() > 0.1 * sol.u[1].norm());
    }

    #[test]
    fn grid_below_start_is_rejected() {
        let err = ode_integrate(AngularMomentum::new(1).unwrap(), &kin(0.1), &[1e-6, 1.0], &OdeOptions::default());
        assert!(matches!(err, Err(Error::InvalidGrid(_))));
    }
}
