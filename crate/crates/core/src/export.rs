//! CSV and JSON writers for phase-shift tables, amplitudes and radial solutions.
//!
//! Floats are written in shortest round-trip form, so identical inputs give
//! byte-identical files. JSON documents carry a metadata header; its only
//! run-dependent field is the optional `timestamp`.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::amplitude::{born_sigma, sigma_closed_at, AmplitudeGrid, CrossSection};
use crate::error::{Error, Result};
use crate::kinematics::{Kinematics, HBAR_C_MEV_FM};
use crate::phase_shift::{exponent_s, SMatrixElement};
use crate::radial::RadialSolution;
use crate::verify::{Check, Report};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    pub two_j: i32,
    pub m: i32,
    pub s: f64,
    #[serde(rename = "re_S")]
    pub re_s: f64,
    #[serde(rename = "im_S")]
    pub im_s: f64,
    pub eta_principal: f64,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeRow {
    pub theta_rad: f64,
    pub re_f: f64,
    pub im_f: f64,
    /// |f|^2
    pub sigma: f64,
    pub sigma_closed: f64,
    pub method: String,
    pub diag: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionRow {
    pub theta_rad: f64,
    /// Closed formula.
    pub sigma: f64,
    /// |f_closed|^2
    pub sigma_amplitude: f64,
    pub sigma_born: f64,
    pub relative_mismatch: f64,
}

/// Kinematics in internal units, plus physical values when a mass scale is given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KinematicsRow {
    pub energy_ratio: f64,
    pub v_over_c: f64,
    pub k1: f64,
    pub k2: f64,
    pub k: f64,
    pub gamma: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub energy_mev: Option<f64>,
    pub momentum_mev_c: Option<f64>,
    /// hbar / (mu c) in fm, the internal length unit.
    pub length_unit_fm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialRow {
    pub rho: f64,
    pub re_u: f64,
    pub im_u: f64,
    pub re_v: f64,
    pub im_v: f64,
    pub re_f: f64,
    pub im_f: f64,
    pub re_g: f64,
    pub im_g: f64,
}

/// One verification check, flattened with its criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub criterion: u8,
    pub name: String,
    pub detail: String,
    pub value: f64,
    pub tolerance: f64,
    pub margin: f64,
    pub passed: bool,
}

pub fn check_rows(report: &Report) -> Vec<CheckRow> {
    report
        .criteria
        .iter()
        .flat_map(|c| {
            c.checks.iter().map(|k| CheckRow {
                criterion: c.criterion,
                name: k.name.clone(),
                detail: k.detail.clone(),
                value: k.value,
                tolerance: k.tolerance,
                margin: k.margin,
                passed: k.passed,
            })
        })
        .collect()
}

pub fn phase_rows(table: &[SMatrixElement], kin: &Kinematics) -> Result<Vec<PhaseRow>> {
    table
        .iter()
        .map(|e| {
            Ok(PhaseRow {
                two_j: e.j.two_j(),
                m: e.j.m(),
                s: exponent_s(e.j, kin.gamma_coupling)?,
                re_s: e.value.re,
                im_s: e.value.im,
                eta_principal: e.eta_principal,
                method: e.method.as_str().to_string(),
            })
        })
        .collect()
}

pub fn amplitude_rows(amp: &AmplitudeGrid, kin: &Kinematics) -> Vec<AmplitudeRow> {
    amp.thetas()
        .iter()
        .zip(&amp.values)
        .zip(&amp.diagnostics)
        .map(|((&theta, f), &diag)| AmplitudeRow {
            theta_rad: theta,
            re_f: f.re,
            im_f: f.im,
            sigma: f.norm_sqr(),
            sigma_closed: sigma_closed_at(theta, kin),
            method: amp.method.as_str().to_string(),
            diag,
        })
        .collect()
}

pub fn cross_section_rows(cs: &CrossSection, kin: &Kinematics) -> Vec<CrossSectionRow> {
    cs.grid
        .thetas()
        .iter()
        .zip(cs.sigma.iter().zip(&cs.from_amplitude))
        .map(|(&theta, (&s, &a))| CrossSectionRow {
            theta_rad: theta,
            sigma: s,
            sigma_amplitude: a,
            sigma_born: born_sigma(theta, kin),
            relative_mismatch: if s == 0.0 { a.abs() } else { (a / s - 1.0).abs() },
        })
        .collect()
}

/// `mass_mev` is the rest energy mu c^2 used for the physical columns.
pub fn kinematics_row(kin: &Kinematics, mass_mev: Option<f64>) -> KinematicsRow {
    KinematicsRow {
        energy_ratio: kin.energy_ratio,
        v_over_c: kin.v_over_c,
        k1: kin.k1,
        k2: kin.k2,
        k: kin.k,
        gamma: kin.gamma_coupling,
        beta: kin.beta,
        beta_prime: kin.beta_prime,
        energy_mev: mass_mev.map(|m| m * kin.energy_ratio),
        momentum_mev_c: mass_mev.map(|m| m * kin.k),
        length_unit_fm: mass_mev.map(|m| HBAR_C_MEV_FM / m),
    }
}

pub fn radial_rows(sol: &RadialSolution) -> Vec<RadialRow> {
    (0..sol.len())
        .map(|n| RadialRow {
            rho: sol.rho[n],
            re_u: sol.u[n].re,
            im_u: sol.u[n].im,
            re_v: sol.v[n].re,
            im_v: sol.v[n].im,
            re_f: sol.f[n].re,
            im_f: sol.f[n].im,
            re_g: sol.g[n].re,
            im_g: sol.g[n].im,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    /// Effective configuration as flat key = value pairs.
    pub config_echo: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kinematics: Option<Kinematics>,
    pub options: serde_json::Value,
    /// Seconds since the Unix epoch.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Metadata {
    pub fn new(config_echo: BTreeMap<String, String>) -> Self {
        Metadata {
            version: VERSION.to_string(),
            config_echo,
            checks: Vec::new(),
            kinematics: None,
            options: serde_json::Value::Null,
            timestamp: None,
        }
    }

    pub fn stamped(mut self) -> Self {
        self.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub metadata: Metadata,
    pub rows: Vec<T>,
}

fn output_error(e: impl std::fmt::Display) -> Error {
    Error::Output(e.to_string())
}

pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(output_error)?;
    }
    w.flush().map_err(output_error)
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(output_error)?;
    out.write_all(b"\n").map_err(output_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::{f_closed, AngleGrid};
    use crate::exec::Execution;
    use crate::kinematics::{CouplingGate, EnergyInput, FINE_STRUCTURE_ALPHA};
    use crate::phase_shift::{phase_table, SMatrixMethod};

    fn kin() -> Kinematics {
        Kinematics::new(FINE_STRUCTURE_ALPHA, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce).unwrap()
    }

    #[test]
    fn phase_csv_header_and_rows() {
        let k = kin();
        let table = phase_table(&k, 3, SMatrixMethod::Exact, Execution::Sequential).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &phase_rows(&table, &k).unwrap()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("two_j,m,s,re_S,im_S,eta_principal,method"));
        assert_eq!(lines.count(), 4);
        assert!(text.contains("\n1,0,"));
    }

    #[test]
    fn amplitude_rows_round_trip_through_csv() {
        let k = kin();
        let grid = AngleGrid::uniform(5, 0.5, 5.5, 0.1).unwrap();
        let rows = amplitude_rows(&f_closed(&grid, &k), &k);
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let back: Vec<AmplitudeRow> =
            csv::Reader::from_reader(buf.as_slice()).deserialize().collect::<std::result::Result<_, _>>().unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn json_without_timestamp_is_reproducible() {
        let k = kin();
        let doc = |_: ()| {
            let mut meta = Metadata::new(BTreeMap::from([("z".to_string(), "1".to_string())]));
            meta.kinematics = Some(k);
            let table = phase_table(&k, 5, SMatrixMethod::Exact, Execution::Parallel).unwrap();
            let mut buf = Vec::new();
            write_json(&mut buf, &Document { metadata: meta, rows: phase_rows(&table, &k).unwrap() }).unwrap();
            buf
        };
        let a = doc(());
        assert_eq!(a, doc(()));
        let text = String::from_utf8(a).unwrap();
        assert!(!text.contains("timestamp"));
        assert!(text.contains("\"version\""));
    }
}
