//! Per-channel S-matrix elements exp(2i eta_j).
//!
//! The exact element is
//!
//!   S_j = (j + i beta') Gamma(s - i beta) / Gamma(s + i beta + 1) exp(i pi (j - s)),
//!
//! with s = sqrt(j^2 - gamma^2). It is evaluated as
//!
//!   S_j = (j + i beta') / (s + i beta) * C(s, beta) * sign(j) * exp(i pi gamma^2 / (|j| + s)),
//!
//! where C(x, y) = Gamma(x - iy) / Gamma(x + iy) is a pure phase. The first
//! factor is unimodular because |j + i beta'|^2 = s^2 + beta^2, and the last
//! factor keeps the O(gamma^2) phase j - s free of cancellation.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::kinematics::Kinematics;
use crate::specfun::gamma_conj_ratio;

/// Total angular momentum j = two_j / 2, two_j odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct AngularMomentum {
    two_j: i32,
}

impl AngularMomentum {
    pub fn new(two_j: i32) -> Result<Self> {
        if two_j % 2 == 0 {
            return Err(Error::InvalidParameter {
                name: "two_j",
                reason: format!("{two_j} is even; j must be a half-integer"),
            });
        }
        Ok(AngularMomentum { two_j })
    }

    /// The channel with orbital index m = j - 1/2.
    pub fn from_m(m: i32) -> Self {
        AngularMomentum { two_j: 2 * m + 1 }
    }

    pub fn two_j(self) -> i32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn abs_j(self) -> f64 {
        self.two_j.unsigned_abs() as f64 / 2.0
    }

    pub fn m(self) -> i32 {
        (self.two_j - 1) / 2
    }

    pub fn is_positive(self) -> bool {
        self.two_j > 0
    }

    /// Channels with |two_j| <= max_two_j in summation order: ascending
    /// |two_j|, j > 0 before j < 0.
    pub fn channels(max_two_j: u32) -> impl Iterator<Item = AngularMomentum> {
        (1..=max_two_j as i32).step_by(2).flat_map(|t| [AngularMomentum { two_j: t }, AngularMomentum { two_j: -t }])
    }
}

impl TryFrom<i32> for AngularMomentum {
    type Error = Error;
    fn try_from(two_j: i32) -> Result<Self> {
        AngularMomentum::new(two_j)
    }
}

impl From<AngularMomentum> for i32 {
    fn from(j: AngularMomentum) -> i32 {
        j.two_j
    }
}

impl fmt::Display for AngularMomentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.two_j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SMatrixMethod {
    Exact,
    SmallGamma,
    Nonrel,
}

impl SMatrixMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SMatrixMethod::Exact => "exact",
            SMatrixMethod::SmallGamma => "small_gamma",
            SMatrixMethod::Nonrel => "nonrel",
        }
    }
}

impl fmt::Display for SMatrixMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SMatrixMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SMatrixMethod::Exact),
            "small_gamma" | "small-gamma" => Ok(SMatrixMethod::SmallGamma),
            "nonrel" => Ok(SMatrixMethod::Nonrel),
            other => {
                Err(Error::InvalidParameter { name: "method", reason: format!("unknown S-matrix method '{other}'") })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SMatrixElement {
    pub j: AngularMomentum,
    pub value: Complex64,
    pub method: SMatrixMethod,
    /// arg(value) / 2, in (-pi/2, pi/2].
    pub eta_principal: f64,
}

impl SMatrixElement {
    fn new(j: AngularMomentum, value: Complex64, method: SMatrixMethod) -> Self {
        SMatrixElement { j, value, method, eta_principal: principal_eta(value) }
    }
}

pub fn principal_eta(value: Complex64) -> f64 {
    let arg = value.arg();
    // arg(-1) may come out as -pi; keep the representative in (-pi/2, pi/2]
    if arg == -PI {
        PI / 2.0
    } else {
        arg / 2.0
    }
}

/// s = sqrt(j^2 - gamma^2), the regular exponent at the origin.
pub fn exponent_s(j: AngularMomentum, gamma: f64) -> Result<f64> {
    let aj = j.abs_j();
    let ag = gamma.abs();
    if aj <= ag {
        return Err(Error::ExponentDomain { two_j: j.two_j() as i64, gamma });
    }
    Ok(((aj - ag) * (aj + ag)).sqrt())
}

pub fn s_matrix_exact(j: AngularMomentum, kin: &Kinematics) -> Result<SMatrixElement> {
    let value = exact_value(j, kin, 0.0)?;
    Ok(SMatrixElement::new(j, value, SMatrixMethod::Exact))
}

/// Exact element with Im ln Gamma(x + iy) shifted by `fault * sign(y)`.
///
/// Only used to check that the verification suites detect a broken kernel.
#[doc(hidden)]
pub fn s_matrix_exact_with_gamma_fault(j: AngularMomentum, kin: &Kinematics, fault: f64) -> Result<SMatrixElement> {
    let value = exact_value(j, kin, fault)?;
    Ok(SMatrixElement::new(j, value, SMatrixMethod::Exact))
}

fn exact_value(j: AngularMomentum, kin: &Kinematics, fault: f64) -> Result<Complex64> {
    let s = exponent_s(j, kin.gamma_coupling)?;
    let beta = kin.beta;
    let lead = Complex64::new(j.j(), kin.beta_prime) / Complex64::new(s, beta);
    let mut phase = gamma_conj_ratio(s, beta);
    if fault != 0.0 && beta != 0.0 {
        phase *= Complex64::from_polar(1.0, -2.0 * fault * beta.signum());
    }
    let g = kin.gamma_coupling;
    let tail = Complex64::from_polar(1.0, PI * g * g / (j.abs_j() + s));
    let sign = if j.is_positive() { 1.0 } else { -1.0 };
    Ok(lead * phase * tail * sign)
}

/// Nonrelativistic element Gamma(|m| + 1/2 - i beta) / Gamma(|m| + 1/2 + i beta).
pub fn s_matrix_nonrel(m_abs: u32, beta: f64) -> Complex64 {
    gamma_conj_ratio(m_abs as f64 + 0.5, beta)
}

/// Small-coupling element split into its nonrelativistic part and the
/// relativistic correction, which carries the factor beta - beta'.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallGammaParts {
    pub nonrel: Complex64,
    pub correction: Complex64,
}

impl SmallGammaParts {
    pub fn total(&self) -> Complex64 {
        self.nonrel + self.correction
    }
}

pub fn small_gamma_parts(j: AngularMomentum, kin: &Kinematics) -> SmallGammaParts {
    let beta = kin.beta;
    let gap = kin.beta_gap();
    let aj = j.abs_j();
    let i = Complex64::i();
    if j.is_positive() {
        // |m| + 1/2 = j
        let c = gamma_conj_ratio(aj, beta);
        SmallGammaParts { nonrel: c, correction: -i * gap * c / Complex64::new(aj, beta) }
    } else {
        // |m| + 1/2 = |j| + 1
        SmallGammaParts {
            nonrel: gamma_conj_ratio(aj + 1.0, beta),
            correction: i * gap * gamma_conj_ratio(aj, beta) / Complex64::new(aj, beta),
        }
    }
}

pub fn s_matrix_small_gamma(j: AngularMomentum, kin: &Kinematics) -> Result<SMatrixElement> {
    Ok(SMatrixElement::new(j, small_gamma_parts(j, kin).total(), SMatrixMethod::SmallGamma))
}

pub fn s_matrix(j: AngularMomentum, kin: &Kinematics, method: SMatrixMethod) -> Result<SMatrixElement> {
    match method {
        SMatrixMethod::Exact => s_matrix_exact(j, kin),
        SMatrixMethod::SmallGamma => s_matrix_small_gamma(j, kin),
        SMatrixMethod::Nonrel => {
            let m_abs = j.m().unsigned_abs();
            Ok(SMatrixElement::new(j, s_matrix_nonrel(m_abs, kin.beta), SMatrixMethod::Nonrel))
        }
    }
}

/// All channels with |two_j| <= max_two_j, in [`AngularMomentum::channels`] order.
pub fn phase_table(
    kin: &Kinematics,
    max_two_j: u32,
    method: SMatrixMethod,
    exec: Execution,
) -> Result<Vec<SMatrixElement>> {
    let channels: Vec<AngularMomentum> = AngularMomentum::channels(max_two_j).collect();
    map_indexed(exec, channels.len(), |n| s_matrix(channels[n], kin, method)).into_iter().collect()
}
