//! Scattering amplitude f(theta) and the differential cross section.
//!
//! All amplitudes are in units where hbar = c = mu = 1, so f carries
//! dimension length^{1/2} measured in 1/(mu c / hbar).

mod closed;
mod grid;
mod series;
mod summation;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use closed::{
    born_sigma, f0_closed, f1_closed, f_closed, sigma, sigma_classical_form, sigma_closed_at, CrossSection,
};
pub use grid::{AngleGrid, DEFAULT_FORWARD_CUTOFF};
pub use series::{f1_series, f_series, f_series_exact, f_series_split, f_series_with_fault};
pub use summation::{abel_richardson, AbelSum, SummationOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeMethod {
    /// Abel-regularised partial-wave sum over exact S-matrix elements.
    SeriesExact,
    /// Small-coupling closed form f0 + f1.
    ClosedForm,
    /// Closed f0 + f1 plus the Abel-summed residual of exact minus small-coupling elements.
    SeriesF1PlusClosedF0,
    /// Nonrelativistic closed part f0 alone.
    ClosedF0,
    /// Relativistic correction f1 in closed form.
    ClosedF1,
    /// Relativistic correction f1 from its two convergent hypergeometric series.
    SeriesF1,
}

impl AmplitudeMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            AmplitudeMethod::SeriesExact => "series_exact",
            AmplitudeMethod::ClosedForm => "closed_form",
            AmplitudeMethod::SeriesF1PlusClosedF0 => "series_f1_plus_closed_f0",
            AmplitudeMethod::ClosedF0 => "closed_f0",
            AmplitudeMethod::ClosedF1 => "closed_f1",
            AmplitudeMethod::SeriesF1 => "series_f1",
        }
    }
}

impl fmt::Display for AmplitudeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AmplitudeMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let all = [
            AmplitudeMethod::SeriesExact,
            AmplitudeMethod::ClosedForm,
            AmplitudeMethod::SeriesF1PlusClosedF0,
            AmplitudeMethod::ClosedF0,
            AmplitudeMethod::ClosedF1,
            AmplitudeMethod::SeriesF1,
        ];
        let key = s.replace('-', "_");
        all.into_iter().find(|m| m.as_str() == key).ok_or_else(|| Error::InvalidParameter {
            name: "method",
            reason: format!("unknown amplitude method '{s}'"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeGrid {
    pub grid: AngleGrid,
    pub values: Vec<Complex64>,
    pub method: AmplitudeMethod,
    /// Per-angle error estimate (zero for closed forms).
    pub diagnostics: Vec<f64>,
    /// False where the estimate exceeds the requested tolerance.
    pub converged: Vec<bool>,
}

impl AmplitudeGrid {
    pub(crate) fn exact(grid: AngleGrid, values: Vec<Complex64>, method: AmplitudeMethod) -> Self {
        let n = values.len();
        AmplitudeGrid { grid, values, method, diagnostics: vec![0.0; n], converged: vec![true; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        self.grid.thetas()
    }

    /// |f|^2 per angle.
    pub fn cross_section(&self) -> Vec<f64> {
        self.values.iter().map(|f| f.norm_sqr()).collect()
    }

    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }
}
