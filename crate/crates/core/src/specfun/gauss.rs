//! F(1, a2; b1; w) for |w| <= 1, w != 1.
//!
//! With c_n = (a2)_n / (b1)_n the series is sum c_n w^n. On the unit circle
//! the terms only decay like n^{Re(a2 - b1)}, so the first N terms are summed
//! directly and the tail is resummed by repeated summation by parts:
//!
//!   sum_{n>=N} c_n w^n = sum_k w^{N+k} (Delta^k c)_N / (1 - w)^{k+1}
//!
//! The forward differences are exact in closed form,
//! (Delta^k c)_n = (d)(d-1)...(d-k+1) (a2)_n / (b1)_{n+k}, d = a2 - b1,
//! so no differencing of computed values is needed. The tail series is
//! asymptotic in k and is cut at its smallest term.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussOptions {
    /// Target relative accuracy of the tail resummation.
    pub tol: f64,
    /// Upper bound on directly summed terms.
    pub max_terms: usize,
}

impl Default for GaussOptions {
    fn default() -> Self {
        GaussOptions { tol: 1e-14, max_terms: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSum {
    pub value: Complex64,
    /// Number of directly summed terms.
    pub terms: usize,
    /// Estimated absolute error.
    pub error: f64,
}

pub fn gauss_f_unit(a2: Complex64, b1: Complex64, w: Complex64) -> Result<Complex64> {
    gauss_f_unit_with(a2, b1, w, &GaussOptions::default()).map(|s| s.value)
}

pub fn gauss_f_unit_with(a2: Complex64, b1: Complex64, w: Complex64, opts: &GaussOptions) -> Result<GaussSum> {
    let divergence = |reason: String| Error::Divergence { re: w.re, im: w.im, reason };
    if w.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter { name: "w", reason: format!("|w| = {} exceeds 1", w.norm()) });
    }
    if (b1 - a2).re <= 0.0 {
        return Err(divergence(format!(
            "Re(b1 - a2) = {} <= 0, the series does not converge on |w| = 1",
            (b1 - a2).re
        )));
    }
    if is_nonpositive_integer(b1) {
        return Err(Error::InvalidParameter { name: "b1", reason: format!("b1 = {b1} is a non-positive integer") });
    }
    let gap = (1.0 - w).norm();
    if gap == 0.0 {
        return Err(divergence("w = 1 is a singular point".into()));
    }
    let tol = opts.tol.max(f64::EPSILON);
    let direct = (1.1 * (1.0 / tol).ln() / gap).ceil() + 16.0;
    if !direct.is_finite() || direct > opts.max_terms as f64 {
        return Err(divergence(format!("{direct} terms needed this close to w = 1 (limit {})", opts.max_terms)));
    }
    let n_direct = direct as usize;

    let (r, phi) = w.to_polar();
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut peak = 1.0f64;
    for n in 0..n_direct {
        let wn = Complex64::from_polar(r.powi(n as i32), n as f64 * phi);
        let t = coeff * wn;
        peak = peak.max(t.norm());
        sum += t;
        coeff *= (a2 + n as f64) / (b1 + n as f64);
    }

    // tail by summation by parts
    let d = a2 - b1;
    let nf = n_direct as f64;
    let q = w / (1.0 - w);
    let mut term = coeff * Complex64::from_polar(r.powi(n_direct as i32), nf * phi) / (1.0 - w);
    let mut tail = term;
    let mut last = term.norm();
    for k in 0..200 {
        let kf = k as f64;
        let next = term * (d - kf) / (b1 + nf + kf) * q;
        let nn = next.norm();
        if nn >= last {
            break;
        }
        term = next;
        tail += term;
        last = nn;
        if nn <= 0.1 * tol * (sum + tail).norm() {
            break;
        }
    }
    let value = sum + tail;
    Ok(GaussSum { value, terms: n_direct, error: last + 4.0 * nf * f64::EPSILON * peak })
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn at_origin_is_one() {
        let v = gauss_f_unit(c(0.5, -0.1), c(1.5, 0.1), c(0.0, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn arctan_closed_form() {
        // F(1, 1/2; 3/2; -u^2) = arctan(u)/u
        let v = gauss_f_unit(c(0.5, 0.0), c(1.5, 0.0), c(-1.0, 0.0)).unwrap();
        assert!((v - PI / 4.0).norm() < 1e-13, "{v}");
        let inside = gauss_f_unit(c(0.5, 0.0), c(1.5, 0.0), c(-0.25, 0.0)).unwrap();
        assert!((inside - 2.0 * 0.5f64.atan()).norm() < 1e-14);
    }

    #[test]
    fn log_closed_form_on_circle() {
        // F(1, 1; 2; w) = -ln(1 - w)/w
        for th in [0.3, PI / 2.0, 2.0, 5.9] {
            let w = Complex64::from_polar(1.0, th);
            let v = gauss_f_unit(c(1.0, 0.0), c(2.0, 0.0), w).unwrap();
            let exact = -(1.0 - w).ln() / w;
            assert!((v - exact).norm() < 1e-12, "theta = {th}: {v} vs {exact}");
        }
    }

    #[test]
    fn tighter_tolerance_uses_more_terms() {
        let w = Complex64::from_polar(1.0, PI / 8.0);
        let a =
            gauss_f_unit_with(c(0.5, -0.2), c(1.5, 0.2), w, &GaussOptions { tol: 1e-10, max_terms: 100_000 }).unwrap();
        let b = gauss_f_unit_with(c(0.5, -0.2), c(1.5, 0.2), w, &GaussOptions { tol: 0.5e-10, max_terms: 100_000 })
            .unwrap();
        assert!(b.terms > a.terms);
        assert!((a.value - b.value).norm() < 1e-8 * a.value.norm());
    }

    #[test]
    fn growing_terms_rejected() {
        let w = Complex64::from_polar(1.0, 1.0);
        assert!(gauss_f_unit(c(1.5, 0.0), c(1.5, 0.0), w).is_err());
    }

    #[test]
    fn near_one_is_a_divergence_error() {
        let w = Complex64::from_polar(1.0, 1e-9);
        let err = gauss_f_unit(c(0.5, 0.0), c(1.5, 0.0), w).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
        assert!(gauss_f_unit(c(0.5, 0.0), c(1.5, 0.0), c(1.0, 0.0)).is_err());
    }
}
