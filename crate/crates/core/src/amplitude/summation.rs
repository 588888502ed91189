//! Abel summation of sum_m c_m e^{i m theta} with Richardson extrapolation.
//!
//! The damped sum A(eps) = sum_m c_m e^{i m theta - eps |m|} is analytic in
//! eps near 0 for theta away from the forward direction, with radius
//! min(theta, 2 pi - theta). A(eps) is evaluated on eps0, eps0/2, ...
//! and extrapolated in integer powers of eps.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummationOptions {
    /// Largest damping rate. Reduced to a quarter of the distance from the
    /// forward direction for angles closer than 4 eps0.
    pub epsilon0: f64,
    /// Number of damping rates in the halving schedule.
    pub levels: usize,
    /// Richardson order.
    pub richardson_order: usize,
    /// Hard cap on |two_j|; channels are otherwise added until the damped
    /// tail is below `tail_tol`.
    pub max_two_j: u32,
    /// Bound on the neglected damped tail at the smallest rate.
    pub tail_tol: f64,
    /// Per-angle extrapolation diagnostic above which an angle is flagged.
    pub diag_tol: f64,
    /// Sum exp(2 i eta) - 1 instead of exp(2 i eta); equal off-forward.
    pub subtract_unity: bool,
    pub execution: Execution,
}

impl Default for SummationOptions {
    fn default() -> Self {
        SummationOptions {
            epsilon0: 0.1,
            levels: 6,
            richardson_order: 3,
            max_two_j: 400_001,
            tail_tol: 1e-12,
            diag_tol: 1e-8,
            subtract_unity: false,
            execution: Execution::Parallel,
        }
    }
}

impl SummationOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, reason: String| Err(Error::InvalidParameter { name, reason });
        if !(self.epsilon0.is_finite() && self.epsilon0 > 0.0) {
            return bad("epsilon0", format!("{} must be positive", self.epsilon0));
        }
        if self.levels < self.richardson_order + 2 {
            return bad(
                "levels",
                format!("{} levels cannot support order {} with an error estimate", self.levels, self.richardson_order),
            );
        }
        if self.levels > 30 {
            return bad("levels", format!("{} levels is beyond double precision", self.levels));
        }
        if self.max_two_j.is_multiple_of(2) {
            return bad("max_two_j", format!("{} must be odd", self.max_two_j));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return bad("tail_tol", format!("{} must lie in (0, 1)", self.tail_tol));
        }
        if !(self.diag_tol > 0.0) {
            return bad("diag_tol", format!("{} must be positive", self.diag_tol));
        }
        Ok(())
    }

    /// Damping rates used at angle theta.
    pub fn schedule(&self, theta: f64) -> Vec<f64> {
        let dist = theta.min(TAU - theta);
        let eps0 = self.epsilon0.min(0.25 * dist);
        (0..self.levels).map(|l| eps0 / f64::powi(2.0, l as i32)).collect()
    }

    /// Number of |m| values needed so the damped tail at rate eps is below tail_tol.
    pub fn terms_needed(&self, eps: f64) -> usize {
        // 2 e^{-eps (M + 1)} / (1 - e^{-eps}) < 0.1 tail_tol
        let denom = -(-eps).exp_m1();
        let m = ((20.0 / (self.tail_tol * denom)).ln() / eps).ceil();
        m.max(1.0) as usize
    }

    /// Smallest |two_j| cap that serves every angle of a grid.
    pub fn channels_for(&self, thetas: &[f64]) -> u32 {
        let need = thetas
            .iter()
            .map(|&t| {
                let eps = *self.schedule(t).last().unwrap_or(&self.epsilon0);
                2 * self.terms_needed(eps) + 1
            })
            .max()
            .unwrap_or(1);
        (need.min(self.max_two_j as usize) as u32) | 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelSum {
    pub value: Complex64,
    /// |T(L-1, p) - T(L-2, p)| plus any truncation bound.
    pub diagnostic: f64,
    /// Whether the channel supply ran out before the tail bound was met.
    pub truncated: bool,
}

/// Abel-Richardson sum of coefficients given in channel order
/// (m = 0, -1, 1, -2, 2, ...), i.e. index 2n is m = n and 2n + 1 is m = -(n + 1).
pub fn abel_richardson(coeffs: &[Complex64], theta: f64, opts: &SummationOptions) -> AbelSum {
    let eps = opts.schedule(theta);
    let levels = eps.len();
    let eps_min = eps[levels - 1];
    let needed = opts.terms_needed(eps_min);
    let available = coeffs.len() / 2;
    let terms = needed.min(available);

    // damping tables e^{-eps |m|}, |m| = 0..=terms
    let damp: Vec<Vec<f64>> = eps.iter().map(|&e| (0..=terms).map(|am| (-e * am as f64).exp()).collect()).collect();

    let mut sums = vec![Complex64::new(0.0, 0.0); levels];
    let mut peak = 0.0f64;
    let n_coeffs = (2 * terms + 1).min(coeffs.len());
    for (idx, &c) in coeffs.iter().take(n_coeffs).enumerate() {
        let m = if idx % 2 == 0 { (idx / 2) as i64 } else { -((idx / 2) as i64 + 1) };
        let am = m.unsigned_abs() as usize;
        let t = c * unit_phase(m, theta);
        peak = peak.max(c.norm());
        for l in 0..levels {
            sums[l] += t * damp[l][am];
        }
    }

    let order = opts.richardson_order.min(levels - 1);
    let mut table = vec![sums];
    for p in 1..=order {
        let prev = &table[p - 1];
        let w = f64::powi(2.0, p as i32);
        let row: Vec<Complex64> = (0..levels)
            .map(|i| if i < p { Complex64::new(f64::NAN, f64::NAN) } else { (prev[i] * w - prev[i - 1]) / (w - 1.0) })
            .collect();
        table.push(row);
    }
    let best = table[order][levels - 1];
    let previous = table[order][levels - 2];
    let mut diagnostic = (best - previous).norm();

    let truncated = needed > available;
    if truncated {
        let reach = available as f64 + 1.0;
        let tail = 2.0 * (-eps_min * reach).exp() / -(-eps_min).exp_m1();
        // Richardson weights of order <= 3 sum to less than 3 in absolute value
        diagnostic += 3.0 * tail * peak.max(1.0);
    }
    AbelSum { value: best, diagnostic, truncated }
}

/// e^{i m theta} with the rounding error of the product m * theta compensated.
fn unit_phase(m: i64, theta: f64) -> Complex64 {
    let mf = m as f64;
    let p = mf * theta;
    let err = mf.mul_add(theta, -p);
    let (s, c) = p.sin_cos();
    Complex64::new(c, s) * Complex64::new(1.0, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn channel_table(n: usize, f: impl Fn(i64) -> Complex64) -> Vec<Complex64> {
        (0..2 * n + 1)
            .map(|idx| {
                let m = if idx % 2 == 0 { (idx / 2) as i64 } else { -((idx / 2) as i64 + 1) };
                f(m)
            })
            .collect()
    }

    #[test]
    fn delta_comb_vanishes_off_forward() {
        let opts = SummationOptions::default();
        let coeffs = channel_table(40_000, |_| Complex64::new(1.0, 0.0));
        for theta in [0.2, 1.0, PI, 4.0, 6.0] {
            let r = abel_richardson(&coeffs, theta, &opts);
            assert!(r.value.norm() <= 3.0 * r.diagnostic + 1e-12, "theta {theta}: {} ({})", r.value, r.diagnostic);
            if theta.min(TAU - theta) > 0.5 {
                assert!(r.diagnostic < 1e-7, "theta {theta}: diag {}", r.diagnostic);
            }
            assert!(!r.truncated);
        }
    }

    #[test]
    fn geometric_series_is_reproduced() {
        // sum_{m >= 0} q^m e^{i m theta} with |q| < 1 is convergent; Abel agrees.
        let q = 0.7f64;
        let coeffs =
            channel_table(
                2_000,
                |m| if m >= 0 { Complex64::new(q.powi(m as i32), 0.0) } else { Complex64::new(0.0, 0.0) },
            );
        let theta = 1.3;
        let exact = 1.0 / (1.0 - q * Complex64::from_polar(1.0, theta));
        let r = abel_richardson(&coeffs, theta, &SummationOptions::default());
        assert!((r.value - exact).norm() <= 3.0 * r.diagnostic + 1e-12);
        assert!((r.value - exact).norm() < 1e-8);
    }

    #[test]
    fn conditionally_convergent_log_series() {
        // sum_{m >= 1} e^{i m theta} / m = -ln(1 - e^{i theta})
        let coeffs =
            channel_table(
                20_000,
                |m| if m >= 1 { Complex64::new(1.0 / m as f64, 0.0) } else { Complex64::new(0.0, 0.0) },
            );
        for theta in [0.5, 2.0, 5.0] {
            let exact = -(1.0 - Complex64::from_polar(1.0, theta)).ln();
            let r = abel_richardson(&coeffs, theta, &SummationOptions::default());
            let err = (r.value - exact).norm();
            assert!(err <= 3.0 * r.diagnostic + 1e-12, "theta {theta}: {err} vs {}", r.diagnostic);
            assert!(err < 1e-7);
            let sharper = SummationOptions { richardson_order: 4, ..SummationOptions::default() };
            assert!((abel_richardson(&coeffs, theta, &sharper).value - exact).norm() < err);
        }
    }

    #[test]
    fn short_supply_is_reported() {
        let coeffs = channel_table(100, |_| Complex64::new(1.0, 0.0));
        let r = abel_richardson(&coeffs, 2.0, &SummationOptions::default());
        assert!(r.truncated);
        assert!(r.diagnostic > 1e-3);
    }

    #[test]
    fn schedule_shrinks_near_forward() {
        let opts = SummationOptions::default();
        assert_eq!(opts.schedule(PI)[0], 0.1);
        assert!((opts.schedule(0.05)[0] - 0.0125).abs() < 1e-15);
        assert_eq!(opts.schedule(0.05).len(), 6);
        assert!(SummationOptions { levels: 4, ..opts }.validate().is_err());
        assert!(opts.validate().is_ok());
    }
}
