//! Relativistic Coulomb scattering of Dirac particles in two dimensions.
//!
//! * [`kinematics`]: physical inputs to the dimensionless parameters k, gamma, beta, beta'.
//! * [`specfun`]: complex log-gamma, Kummer Phi, Gauss F on the unit circle.
//! * [`phase_shift`]: exact and small-coupling S-matrix elements per channel j.
//! * [`amplitude`]: the partial-wave amplitude (Abel-regularised), its
//!   small-coupling closed form, and differential cross sections.
//! * [`radial`]: radial solutions (Kummer form and direct ODE integration) and
//!   phase extraction from their asymptotics, an independent check on the
//!   phase-shift formula.
//! * [`verify`]: the programmatic verification suites behind `coulomb2d verify`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod error;
pub mod exec;
pub mod export;
pub mod kinematics;
pub mod phase_shift;
pub mod radial;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use kinematics::{derive_kinematics, CouplingGate, EnergyInput, Kinematics, ParticleSpec, Species};
pub use phase_shift::{AngularMomentum, SMatrixElement, SMatrixMethod};
