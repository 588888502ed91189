//! Complex special functions used by the scattering formulas.
//!
//! All functions are pure and reentrant; nothing is cached.

mod dd;
mod gamma;
mod gauss;
mod kummer;

pub use gamma::{gamma_conj_ratio, gamma_ratio, log_gamma, recip_gamma};
pub use gauss::{gauss_f_unit, gauss_f_unit_with, GaussOptions, GaussSum};
pub use kummer::{kummer_phi, kummer_phi_with, kummer_recurrence_check, KummerOptions, KummerRegime, KummerValue};
