//! Phase shifts from the large-rho behaviour of a radial solution.
//!
//! Any solution is a combination P W1 + Q W2 of the two asymptotic waves
//!
//!   W1: u = rho^{i beta} sum a_n rho^{-n},            v = rho^{i beta} sum b_n rho^{-n},
//!   W2: u = e^{-2i rho} rho^{-i beta} sum c_n rho^{-n}, v = e^{-2i rho} rho^{-i beta} sum d_n rho^{-n},
//!
//! with a_0 = 1, b_0 = 0, c_0 = 0, d_0 = 1 and the remaining coefficients
//! fixed by the radial system. P and Q are found by linear least squares on
//! the fit window, and
//!
//!   e^{2 i eta} = (P / Q) e^{-2i (beta ln 2 - m pi / 2 - pi / 4)}.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{linear_grid, ode_integrate, OdeOptions, RadialSolution};
use crate::error::{Error, Result};
use crate::kinematics::Kinematics;
use crate::phase_shift::AngularMomentum;

const ASYMPTOTIC_TERMS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitComponent {
    /// Upper radial function f.
    F,
    /// Lower radial function g.
    G,
    /// f and g jointly.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub window: [f64; 2],
    pub component: FitComponent,
    /// Largest acceptable relative rms residual.
    pub max_residual: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { window: [100.0, 200.0], component: FitComponent::Both, max_residual: 1e-4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseExtraction {
    /// Phase shift modulo pi, in (-pi/2, pi/2].
    pub eta: f64,
    pub fit_window: [f64; 2],
    /// Relative rms residual of the fit.
    pub residual: f64,
    pub component: FitComponent,
}

/// |a - b| reduced modulo pi to [0, pi/2].
pub fn eta_distance_mod_pi(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

struct Waves {
    ab: Vec<(Complex64, Complex64)>,
    cd: Vec<(Complex64, Complex64)>,
    beta: f64,
}

impl Waves {
    fn new(j: AngularMomentum, kin: &Kinematics) -> Self {
        let i = Complex64::i();
        let jj = j.j();
        let (beta, bp) = (kin.beta, kin.beta_prime);
        let mut ab = vec![(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))];
        let mut cd = vec![(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))];
        for n in 0..ASYMPTOTIC_TERMS - 1 {
            let nf = n as f64;
            let (a, b) = ab[n];
            let b_next = ((nf - 2.0 * i * beta) * b - (i * bp - jj) * a) / (2.0 * i);
            let a_next = -(i * bp + jj) * b_next / (nf + 1.0);
            ab.push((a_next, b_next));
            let (c, d) = cd[n];
            let c_next = -((2.0 * i * beta + nf) * c + (i * bp + jj) * d) / (2.0 * i);
            let d_next = (i * bp - jj) * c_next / (nf + 1.0);
            cd.push((c_next, d_next));
        }
        Waves { ab, cd, beta }
    }

    /// (u, v) of both waves at rho.
    fn at(&self, rho: f64) -> [(Complex64, Complex64); 2] {
        let inv = 1.0 / rho;
        let mut s1 = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let mut s2 = s1;
        let mut p = 1.0;
        for n in 0..ASYMPTOTIC_TERMS {
            s1.0 += self.ab[n].0 * p;
            s1.1 += self.ab[n].1 * p;
            s2.0 += self.cd[n].0 * p;
            s2.1 += self.cd[n].1 * p;
            p *= inv;
        }
        let log = rho.ln();
        let w1 = Complex64::from_polar(1.0, self.beta * log);
        let w2 = Complex64::from_polar(1.0, -2.0 * rho - self.beta * log);
        [(w1 * s1.0, w1 * s1.1), (w2 * s2.0, w2 * s2.1)]
    }
}

/// Least-squares fit of the solution on the window to the two asymptotic waves.
pub fn extract_phase(sol: &RadialSolution, opts: &FitOptions) -> Result<PhaseExtraction> {
    let [lo, hi] = opts.window;
    let waves = Waves::new(sol.j, &sol.kin);
    let lower = (sol.kin.k2 / sol.kin.k1).sqrt();
    let half = Complex64::new(0.5, 0.0);
    let g_fac = Complex64::new(0.0, -0.5 * lower);

    // normal equations for two complex unknowns
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut rhs = [Complex64::new(0.0, 0.0); 2];
    let mut rows: Vec<([Complex64; 2], Complex64)> = Vec::new();
    for n in 0..sol.len() {
        let r = sol.rho[n];
        if r < lo || r > hi {
            continue;
        }
        let e = Complex64::from_polar(1.0, r);
        let w = waves.at(r);
        if opts.component != FitComponent::G {
            rows.push(([half * e * (w[0].0 + w[0].1), half * e * (w[1].0 + w[1].1)], sol.f[n]));
        }
        if opts.component != FitComponent::F {
            rows.push(([g_fac * e * (w[0].0 - w[0].1), g_fac * e * (w[1].0 - w[1].1)], sol.g[n]));
        }
    }
    if rows.len() < 4 {
        return Err(Error::InvalidGrid(format!("only {} samples inside the fit window [{lo}, {hi}]", rows.len())));
    }
    for (basis, y) in &rows {
        for a in 0..2 {
            for b in 0..2 {
                m[a][b] += basis[a].conj() * basis[b];
            }
            rhs[a] += basis[a].conj() * y;
        }
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm() == 0.0 {
        return Err(Error::PoorFit { residual: f64::INFINITY, tol: opts.max_residual });
    }
    let p = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
    let q = (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det;

    let (mut res2, mut norm2) = (0.0, 0.0);
    for (basis, y) in &rows {
        res2 += (basis[0] * p + basis[1] * q - y).norm_sqr();
        norm2 += y.norm_sqr();
    }
    let residual = if norm2 > 0.0 { (res2 / norm2).sqrt() } else { f64::INFINITY };
    if !(residual <= opts.max_residual) {
        return Err(Error::PoorFit { residual, tol: opts.max_residual });
    }

    let m_index = sol.j.m() as f64;
    let shift = sol.kin.beta * LN_2 - m_index * FRAC_PI_2 - 0.25 * PI;
    let s = p / q * Complex64::from_polar(1.0, -2.0 * shift);
    let mut eta = 0.5 * s.arg();
    if eta <= -FRAC_PI_2 {
        eta += PI;
    }
    Ok(PhaseExtraction { eta, fit_window: opts.window, residual, component: opts.component })
}

/// Integrates channel j out to the end of the fit window and extracts its phase.
pub fn oracle_phase(
    j: AngularMomentum,
    kin: &Kinematics,
    ode: &OdeOptions,
    fit: &FitOptions,
) -> Result<PhaseExtraction> {
    let [lo, hi] = fit.window;
    if !(lo > ode.rho0 && hi > lo) {
        return Err(Error::InvalidGrid(format!("fit window [{lo}, {hi}] is not valid")));
    }
    let count = ((hi - lo) / 0.1).ceil() as usize + 1;
    let grid = linear_grid(lo, hi, count.max(8));
    let sol = ode_integrate(j, kin, &grid, ode)?;
    extract_phase(&sol, fit)
}
