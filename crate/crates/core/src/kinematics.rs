//! Dimensionless scattering parameters.
//!
//! Units are hbar = c = mu = 1 throughout the numeric core: momenta are in
//! units of mu c / hbar, lengths in hbar / (mu c), energies in mu c^2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA value used unless a caller overrides it.
pub const FINE_STRUCTURE_ALPHA: f64 = 1.0 / 137.035999;

/// hbar c in MeV fm.
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;

/// Electron rest energy in MeV.
pub const ELECTRON_MASS_MEV: f64 = 0.510_998_950;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Species {
    Electron,
    Positron,
}

impl Species {
    /// Sign of kappa in the potential -kappa/r: attractive for electrons.
    pub fn coupling_sign(self) -> f64 {
        match self {
            Species::Electron => 1.0,
            Species::Positron => -1.0,
        }
    }
}

impl std::str::FromStr for Species {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "electron" | "e-" => Ok(Species::Electron),
            "positron" | "e+" => Ok(Species::Positron),
            other => Err(Error::InvalidParameter {
                name: "particle",
                reason: format!("unknown species {other:?} (expected electron or positron)"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleSpec {
    pub species: Species,
    pub z_nucleus: u32,
    pub fine_structure_alpha: f64,
}

impl ParticleSpec {
    pub fn new(species: Species, z_nucleus: u32) -> Self {
        ParticleSpec { species, z_nucleus, fine_structure_alpha: FINE_STRUCTURE_ALPHA }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.fine_structure_alpha = alpha;
        self
    }

    /// gamma = kappa / (hbar c) = +-Z alpha.
    pub fn gamma(&self) -> Result<f64> {
        if self.z_nucleus < 1 {
            return Err(Error::InvalidCharge(self.z_nucleus));
        }
        if !(self.fine_structure_alpha.is_finite() && self.fine_structure_alpha > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: format!("must be positive and finite (got {})", self.fine_structure_alpha),
            });
        }
        Ok(self.species.coupling_sign() * self.z_nucleus as f64 * self.fine_structure_alpha)
    }
}

/// Whether to reject |gamma| >= 1/2.
///
/// `Override` lets strong-coupling studies through; channels with
/// j^2 <= gamma^2 then fail individually in [`crate::phase_shift::exponent_s`].
/// Results with the gate overridden carry no accuracy warranty.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CouplingGate {
    #[default]
    Enforce,
    Override,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyInput {
    /// E / (mu c^2)
    EnergyRatio(f64),
    /// v_c / c
    Velocity(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    pub energy_ratio: f64,
    pub k1: f64,
    pub k2: f64,
    pub k: f64,
    pub gamma_coupling: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub v_over_c: f64,
}

pub fn derive_kinematics(spec: &ParticleSpec, energy_ratio: f64) -> Result<Kinematics> {
    Kinematics::new(spec.gamma()?, EnergyInput::EnergyRatio(energy_ratio), CouplingGate::Enforce)
}

impl Kinematics {
    pub fn from_spec(spec: &ParticleSpec, energy: EnergyInput, gate: CouplingGate) -> Result<Self> {
        Kinematics::new(spec.gamma()?, energy, gate)
    }

    /// Builds the parameter set for an arbitrary real coupling gamma.
    pub fn new(gamma: f64, energy: EnergyInput, gate: CouplingGate) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter { name: "gamma", reason: "must be finite".into() });
        }
        if gate == CouplingGate::Enforce && gamma.abs() >= 0.5 {
            return Err(Error::CouplingTooStrong { gamma });
        }
        let (energy_ratio, k1, k2, k, v) = match energy {
            EnergyInput::EnergyRatio(e) => {
                if !(e.is_finite() && e > 1.0) {
                    return Err(Error::BelowThreshold(e));
                }
                let k1 = e + 1.0;
                let k2 = e - 1.0;
                let k = (k1 * k2).sqrt();
                (e, k1, k2, k, k / e)
            }
            EnergyInput::Velocity(v) => {
                if !(v.is_finite() && v > 0.0 && v < 1.0) {
                    return Err(Error::InvalidVelocity(v));
                }
                let lorentz = 1.0 / ((1.0 - v) * (1.0 + v)).sqrt();
                let k = v * lorentz;
                let k1 = lorentz + 1.0;
                // E - 1 without cancellation near threshold
                let k2 = k * k / k1;
                (lorentz, k1, k2, k, v)
            }
        };
        Ok(Kinematics {
            energy_ratio,
            k1,
            k2,
            k,
            gamma_coupling: gamma,
            beta: gamma * energy_ratio / k,
            beta_prime: gamma / k,
            v_over_c: v,
        })
    }

    /// Kinematics with the Coulomb parameter beta held fixed at a given speed,
    /// i.e. gamma = beta * v / c.
    pub fn from_beta_velocity(beta: f64, v_over_c: f64) -> Result<Self> {
        if !(v_over_c.is_finite() && v_over_c > 0.0 && v_over_c < 1.0) {
            return Err(Error::InvalidVelocity(v_over_c));
        }
        let mut kin = Kinematics::new(beta * v_over_c, EnergyInput::Velocity(v_over_c), CouplingGate::Enforce)?;
        kin.beta = beta;
        Ok(kin)
    }

    /// beta - beta', evaluated as gamma (E - mu c^2) / (hbar c k) to avoid cancellation.
    pub fn beta_gap(&self) -> f64 {
        self.gamma_coupling * self.k2 / self.k
    }

    /// 1 - beta'/beta = 1 - sqrt(1 - v^2/c^2); finite at gamma = 0.
    pub fn relativistic_factor(&self) -> f64 {
        self.k2 / self.energy_ratio
    }
}
