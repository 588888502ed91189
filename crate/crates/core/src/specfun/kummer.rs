//! Kummer's confluent hypergeometric function Phi(a, b, z) = 1F1(a; b; z).
//!
//! Two regimes, switched on |z|:
//!
//! * small |z|: the Taylor series summed in double-double arithmetic. On the
//!   imaginary axis the terms peak near e^{|z|} times the result, so plain
//!   f64 loses all accuracy long before |z| = 30;
//! * large |z|: the two-sided asymptotic expansion (both the e^z z^{a-b} and
//!   the z^{-a} pieces), truncated at the smallest term. The connection
//!   factor is e^{+i pi a} for Im z >= 0 and e^{-i pi a} below the real axis.
//!
//! If the preferred regime misses the tolerance, the other one is tried
//! before giving up.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dd::{Dd, DdComplex};
use super::gamma::log_gamma;
use crate::error::{Error, Result};

/// Above this |z| the dd Taylor series can no longer absorb the cancellation.
const TAYLOR_HARD_LIMIT: f64 = 60.0;
const TAYLOR_MAX_TERMS: usize = 4000;
const ASYMPTOTIC_MAX_TERMS: usize = 400;
const DD_EPS: f64 = 1.232_595_164_407_831e-32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerOptions {
    /// |z| at which evaluation switches from the Taylor series to the asymptotic expansion.
    pub switchover: f64,
    /// Required relative accuracy.
    pub tol: f64,
}

impl Default for KummerOptions {
    fn default() -> Self {
        KummerOptions { switchover: 30.0, tol: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KummerRegime {
    Taylor,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerValue {
    pub value: Complex64,
    pub regime: KummerRegime,
    /// Estimated relative error.
    pub error: f64,
}

pub fn kummer_phi(a: Complex64, b: f64, z: Complex64) -> Result<Complex64> {
    kummer_phi_with(a, b, z, &KummerOptions::default()).map(|v| v.value)
}

pub fn kummer_phi_with(a: Complex64, b: f64, z: Complex64, opts: &KummerOptions) -> Result<KummerValue> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::InvalidParameter { name: "b", reason: format!("Kummer Phi needs b > 0 (got {b})") });
    }
    if z.norm() == 0.0 || a.norm() == 0.0 {
        return Ok(KummerValue { value: Complex64::new(1.0, 0.0), regime: KummerRegime::Taylor, error: 0.0 });
    }
    let first_taylor = z.norm() < opts.switchover;
    let first = if first_taylor { taylor(a, b, z) } else { asymptotic(a, b, z) };
    if first.error <= opts.tol {
        return Ok(first);
    }
    let second = if first_taylor {
        Some(asymptotic(a, b, z))
    } else if z.norm() < TAYLOR_HARD_LIMIT {
        Some(taylor(a, b, z))
    } else {
        None
    };
    let best = match second {
        Some(s) if s.error <= opts.tol => return Ok(s),
        Some(s) if s.error < first.error => s,
        _ => first,
    };
    Err(Error::NonConvergence { what: "Kummer Phi", achieved: best.error, tol: opts.tol })
}

fn taylor(a: Complex64, b: f64, z: Complex64) -> KummerValue {
    let zd = DdComplex::from_c64(z);
    let ad = DdComplex::from_c64(a);
    let bd = Dd::new(b);
    let mut term = DdComplex::from_c64(Complex64::new(1.0, 0.0));
    let mut sum = term;
    let mut peak = 1.0f64;
    let zn = z.norm();
    let mut truncation = f64::INFINITY;
    for n in 0..TAYLOR_MAX_TERMS {
        let nd = Dd::new(n as f64);
        let denom = (bd + nd) * Dd::new(n as f64 + 1.0);
        term = (term * ad.add_real(nd) * zd).scale(denom.recip());
        sum = sum + term;
        let t = term.norm_f64();
        peak = peak.max(t);
        if t == 0.0 {
            truncation = 0.0;
            break;
        }
        let m = n as f64 + 1.0;
        // successive ratio bound |a + m| |z| / ((b + m)(m + 1))
        let ratio = (a + m).norm() * zn / ((b + m) * (m + 1.0));
        if ratio < 0.5 {
            let s = sum.norm_f64();
            let tail = t * ratio / (1.0 - ratio);
            if tail <= 1e-20 * s {
                truncation = tail / s;
                break;
            }
        }
    }
    let value = sum.to_c64();
    let s = value.norm();
    let rounding = peak * DD_EPS * 8.0 / s;
    KummerValue { value, regime: KummerRegime::Taylor, error: rounding + truncation }
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

struct SeriesSum {
    sum: Complex64,
    last: f64,
}

/// sum_s (p)_s (q)_s / s! * x^s, stopped at the smallest term.
fn asymptotic_series(p: Complex64, q: Complex64, x: Complex64) -> SeriesSum {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = 1.0f64;
    // terms may grow at first when |p q| > 1/|x|
    let hump = p.norm() + q.norm();
    for s in 0..ASYMPTOTIC_MAX_TERMS {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) / (sf + 1.0) * x;
        let nn = next.norm();
        if nn >= last && sf >= hump {
            // divergence sets in; the previous term bounds the error
            break;
        }
        term = next;
        sum += term;
        last = nn;
        if nn == 0.0 || nn < 1e-18 * sum.norm() {
            break;
        }
    }
    SeriesSum { sum, last }
}

fn asymptotic(a: Complex64, b: f64, z: Complex64) -> KummerValue {
    let bc = Complex64::new(b, 0.0);
    let ln_gamma_b = match log_gamma(bc) {
        Ok(v) => v,
        Err(_) => {
            return KummerValue {
                value: Complex64::new(f64::NAN, f64::NAN),
                regime: KummerRegime::Asymptotic,
                error: f64::INFINITY,
            }
        }
    };
    let ln_z = z.ln();
    let i = Complex64::i();
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };

    // e^z z^{a-b} / Gamma(a) * sum (1-a)_s (b-a)_s / s! z^{-s}
    let (p1, e1) = if is_nonpositive_integer(a) {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        let ser = asymptotic_series(1.0 - a, bc - a, z.inv());
        let pre = match log_gamma(a) {
            Ok(lga) => (ln_gamma_b - lga + z + (a - b) * ln_z).exp(),
            Err(_) => Complex64::new(0.0, 0.0),
        };
        (pre * ser.sum, pre.norm() * ser.last)
    };
    // e^{+-i pi a} z^{-a} / Gamma(b-a) * sum (a)_s (a-b+1)_s / s! (-z)^{-s}
    let bma = bc - a;
    let (p2, e2) = if is_nonpositive_integer(bma) {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        let ser = asymptotic_series(a, a - b + 1.0, -z.inv());
        let pre = match log_gamma(bma) {
            Ok(lgba) => (ln_gamma_b - lgba + sign * i * PI * a - a * ln_z).exp(),
            Err(_) => Complex64::new(0.0, 0.0),
        };
        (pre * ser.sum, pre.norm() * ser.last)
    };
    let value = p1 + p2;
    let scale = value.norm();
    let rounding = 64.0 * f64::EPSILON * (p1.norm() + p2.norm()) / scale;
    KummerValue { value, regime: KummerRegime::Asymptotic, error: (e1 + e2) / scale + rounding }
}

/// Relative residual of the contiguous relation
/// (z d/dz + a) Phi(a, b, z) = a Phi(a + 1, b, z), with
/// d/dz Phi(a, b, z) = (a / b) Phi(a + 1, b + 1, z).
///
/// Falls back to the absolute residual when a Phi(a + 1, b, z) vanishes.
pub fn kummer_recurrence_check(a: Complex64, b: f64, z: Complex64) -> Result<f64> {
    let phi = kummer_phi(a, b, z)?;
    let phi_up = kummer_phi(a + 1.0, b, z)?;
    let dphi = a / b * kummer_phi(a + 1.0, b + 1.0, z)?;
    let lhs = z * dphi + a * phi;
    let rhs = a * phi_up;
    let diff = (lhs - rhs).norm();
    if rhs.norm() == 0.0 {
        Ok(diff)
    } else {
        Ok(diff / rhs.norm())
    }
}
