//! Complex log-gamma on the principal (continuous) branch.
//!
//! Right half-plane: upward recurrence until |z| >= 17, then the Stirling
//! series with ten Bernoulli terms (truncation error below 1e-20). Left
//! half-plane: reflection, with the branch of log sin(pi z) pinned so the
//! result is continuous away from the cut on the negative real axis.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const STIRLING_MIN_MODULUS: f64 = 17.0;

/// B_{2k} / (2k (2k - 1)) for k = 1..=10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter { name: "z", reason: format!("non-finite argument {z}") });
    }
    if z.re < 0.5 {
        if z.im < 0.0 {
            return Ok(reflect_upper(z.conj()).conj());
        }
        return Ok(reflect_upper(z));
    }
    Ok(log_gamma_right(z))
}

/// ln Gamma for Re z >= 1/2.
fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < STIRLING_MIN_MODULUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling(w) - shift
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for &c in STIRLING_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series * inv
}

/// Reflection for Re z < 1/2, Im z >= 0.
fn reflect_upper(z: Complex64) -> Complex64 {
    ln_pi_minus_log_sin_pi(z) - log_gamma_right(1.0 - z)
}

/// ln(pi) - log sin(pi z) on the branch continuous in the closed upper
/// half-plane, normalised so that it vanishes at z = 1/2.
fn ln_pi_minus_log_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im > 1.0 {
        // log sin(pi z) = -i pi z + ln(1/2) + i pi/2 + log(1 - e^{2 pi i z})
        let q = (2.0 * PI * i * z).exp();
        let log_sin = -i * PI * z - std::f64::consts::LN_2 + i * FRAC_PI_2 + (1.0 - q).ln();
        return LN_PI - log_sin;
    }
    let principal = sin_pi(z).ln();
    // The branch we want has imaginary part within pi/2 of pi/2 - pi x.
    let reference = FRAC_PI_2 - PI * z.re;
    let turns = ((reference - principal.im) / TAU).round();
    LN_PI - Complex64::new(principal.re, principal.im + TAU * turns)
}

/// sin(pi z) with exact argument reduction of the real part.
fn sin_pi(z: Complex64) -> Complex64 {
    let x = z.re - 2.0 * (z.re * 0.5).round();
    let (s, c) = (PI * x).sin_cos();
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// Gamma(a) / Gamma(b) as exp(ln Gamma(a) - ln Gamma(b)).
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// Gamma(x - iy) / Gamma(x + iy) for real x > 0, real y.
///
/// The ratio is unimodular; only the phase -2 arg Gamma(x + iy) is computed.
pub fn gamma_conj_ratio(x: f64, y: f64) -> Complex64 {
    debug_assert!(x > 0.0);
    let phase = log_gamma_right_or_reflect(Complex64::new(x, y)).im;
    Complex64::from_polar(1.0, -2.0 * phase)
}

fn log_gamma_right_or_reflect(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        log_gamma_right(z)
    } else if z.im < 0.0 {
        reflect_upper(z.conj()).conj()
    } else {
        reflect_upper(z)
    }
}

/// 1 / Gamma(z), entire; zero at the poles of Gamma.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    // z / Gamma(1 + z) stays smooth through z = 0.
    z * (-log_gamma_right_or_reflect(z + 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_is_log_sqrt_pi() {
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * LN_PI).abs() < 1e-13 * 0.5 * LN_PI);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn integers_are_log_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30 {
            let v = log_gamma(c(n as f64, 0.0)).unwrap();
            assert!((v.re - fact.ln()).abs() <= 1e-14 * fact.ln().abs().max(1.0), "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn poles_are_errors() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-7.0, 1e-9)).is_ok());
    }

    #[test]
    fn modulus_on_critical_line() {
        // |Gamma(1/2 + i b)|^2 = pi / cosh(pi b)
        for &b in &[0.0, 0.3, 1.0, 2.5, 5.0] {
            let v = log_gamma(c(0.5, b)).unwrap();
            let lhs = (2.0 * v.re).exp() * (PI * b).cosh() / PI;
            assert!((lhs - 1.0).abs() < 1e-13, "b = {b}: {lhs}");
        }
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(gamma_ratio(c(2.3, 0.4), c(2.3, 0.4)).unwrap(), c(1.0, 0.0));
        let two = gamma_ratio(c(0.5, 0.0), c(1.5, 0.0)).unwrap();
        assert!((two - 2.0).norm() < 4e-14);
        let unit = gamma_ratio(c(1.5, -0.2), c(1.5, 0.2)).unwrap();
        assert!((unit.norm() - 1.0).abs() < 1e-13);
        assert!((gamma_conj_ratio(1.5, 0.2) - unit).norm() < 1e-13);
    }

    #[test]
    fn recip_gamma_is_smooth_at_origin() {
        assert_eq!(recip_gamma(c(0.0, 0.0)), c(0.0, 0.0));
        let small = recip_gamma(c(0.0, 1e-8));
        // 1/Gamma(z) ~ z for small z
        assert!((small - c(0.0, 1e-8)).norm() < 1e-15);
        assert_eq!(recip_gamma(c(-3.0, 0.0)), c(0.0, 0.0));
    }
}
