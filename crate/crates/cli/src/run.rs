use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use coulomb2d::amplitude::{f_series, sigma, AmplitudeGrid, AmplitudeMethod, AngleGrid, SummationOptions};
use coulomb2d::export::{
    amplitude_rows, check_rows, cross_section_rows, kinematics_row, phase_rows, radial_rows, write_csv, write_json,
    Document, Metadata,
};
use coulomb2d::kinematics::HBAR_C_MEV_FM;
use coulomb2d::phase_shift::{phase_table, s_matrix_exact};
use coulomb2d::radial::{
    eta_distance_mod_pi, kummer_radial, kummer_radial_residual, linear_grid, log_grid, ode_integrate, oracle_phase,
    FitOptions, OdeOptions, RadialSolution,
};
use coulomb2d::verify::{run_suite, Check, Report, VerifyOptions};
use coulomb2d::{
    AngularMomentum, CouplingGate, EnergyInput, Error, Execution, Kinematics, ParticleSpec, Result, SMatrixMethod,
};
use serde::Serialize;

use crate::args::{
    AmplitudeArgs, Command, Common, CrossSectionArgs, Format, GridArgs, KinematicsArgs, PhaseShiftArgs, Physics,
    RadialArgs, Source, Spacing, UnitArgs, Units, VerifyArgs,
};

/// Outcome of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    ChecksFailed,
}

type Echo = BTreeMap<String, String>;

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Kinematics(a) => kinematics(a),
        Command::PhaseShifts(a) => phase_shifts(a),
        Command::Amplitude(a) => amplitude(a),
        Command::CrossSection(a) => cross_section(a),
        Command::Radial(a) => radial(a),
        Command::Verify(a) => verify(a),
    }
}

fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}

fn execution(common: &Common) -> Execution {
    if common.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn resolve(p: &Physics, echo: &mut Echo) -> Result<Kinematics> {
    let spec = ParticleSpec::new(p.particle, p.z).with_alpha(p.alpha);
    let energy = match (p.energy.energy_ratio, p.energy.v_over_c) {
        (Some(e), _) => EnergyInput::EnergyRatio(e),
        (None, Some(v)) => EnergyInput::Velocity(v),
        (None, None) => return Err(invalid("energy", "give --energy-ratio or --v-over-c")),
    };
    let gate = if p.allow_strong_coupling { CouplingGate::Override } else { CouplingGate::Enforce };
    let kin = Kinematics::from_spec(&spec, energy, gate)?;
    echo.insert("z".into(), p.z.to_string());
    echo.insert("particle".into(), format!("{:?}", p.particle).to_lowercase());
    echo.insert("alpha".into(), p.alpha.to_string());
    echo.insert("energy_ratio".into(), kin.energy_ratio.to_string());
    echo.insert("v_over_c".into(), kin.v_over_c.to_string());
    echo.insert("allow_strong_coupling".into(), p.allow_strong_coupling.to_string());
    Ok(kin)
}

/// Length unit hbar / (mu c) in fm, when physical units are requested.
fn length_unit(u: &UnitArgs, echo: &mut Echo) -> Result<Option<f64>> {
    match u.units {
        Units::Dimensionless => {
            echo.insert("units".into(), "dimensionless".into());
            Ok(None)
        }
        Units::Physical => {
            if !(u.mass_mev.is_finite() && u.mass_mev > 0.0) {
                return Err(invalid("mass-mev", format!("must be positive (got {})", u.mass_mev)));
            }
            echo.insert("units".into(), "physical".into());
            echo.insert("mass_mev".into(), u.mass_mev.to_string());
            Ok(Some(HBAR_C_MEV_FM / u.mass_mev))
        }
    }
}

fn angle_grid(g: &GridArgs, echo: &mut Echo) -> Result<AngleGrid> {
    echo.insert("cutoff".into(), g.cutoff.to_string());
    match &g.thetas {
        Some(list) => {
            echo.insert("thetas".into(), list.0.iter().map(f64::to_string).collect::<Vec<_>>().join(","));
            AngleGrid::new(list.0.clone(), g.cutoff)
        }
        None => {
            echo.insert("count".into(), g.count.to_string());
            echo.insert("theta_min".into(), g.theta_min.to_string());
            echo.insert("theta_max".into(), g.theta_max.to_string());
            AngleGrid::uniform(g.count, g.theta_min, g.theta_max, g.cutoff)
        }
    }
}

fn sink(common: &Common) -> Result<Box<dyn Write>> {
    match &common.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Output(format!("{}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

/// Aligned columns; a single row is printed as `name value` lines.
fn write_table<W: Write, T: Serialize>(mut out: W, rows: &[T]) -> Result<()> {
    let out_err = |e: io::Error| Error::Output(e.to_string());
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    let mut reader = csv::Reader::from_reader(buf.as_slice());
    let header: Vec<String> =
        reader.headers().map_err(|e| Error::Output(e.to_string()))?.iter().map(String::from).collect();
    let body: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.map(|r| r.iter().map(String::from).collect()))
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Output(e.to_string()))?;
    if let [row] = body.as_slice() {
        let w = header.iter().map(String::len).max().unwrap_or(0);
        for (h, v) in header.iter().zip(row) {
            writeln!(out, "{h:<w$}  {v}").map_err(out_err)?;
        }
    } else {
        let widths: Vec<usize> = (0..header.len())
            .map(|c| body.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
            .collect();
        for line in std::iter::once(&header).chain(&body) {
            let cells: Vec<String> = line.iter().zip(&widths).map(|(v, &w)| format!("{v:>w$}")).collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).map_err(out_err)?;
        }
    }
    out.flush().map_err(out_err)
}

fn emit<T: Serialize>(common: &Common, default: Format, metadata: Metadata, rows: Vec<T>) -> Result<()> {
    let out = sink(common)?;
    match common.format.unwrap_or(default) {
        Format::Csv => write_csv(out, &rows),
        Format::Table => write_table(out, &rows),
        Format::Json => {
            let metadata = if common.no_timestamp { metadata } else { metadata.stamped() };
            write_json(out, &Document { metadata, rows })
        }
    }
}

fn metadata(echo: Echo, kin: Option<Kinematics>, checks: Vec<Check>, options: serde_json::Value) -> Metadata {
    let mut m = Metadata::new(echo);
    m.kinematics = kin;
    m.checks = checks;
    m.options = options;
    m
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

fn kinematics(a: KinematicsArgs) -> Result<Status> {
    let mut echo = Echo::new();
    let kin = resolve(&a.physics, &mut echo)?;
    let mass = length_unit(&a.units, &mut echo)?.map(|_| a.units.mass_mev);
    let rows = vec![kinematics_row(&kin, mass)];
    emit(&a.common, Format::Table, metadata(echo, Some(kin), Vec::new(), serde_json::Value::Null), rows)?;
    Ok(Status::Passed)
}

fn phase_shifts(a: PhaseShiftArgs) -> Result<Status> {
    let mut echo = Echo::new();
    let kin = resolve(&a.physics, &mut echo)?;
    echo.insert("max_two_j".into(), a.max_two_j.to_string());
    echo.insert("method".into(), a.method.as_str().into());
    let table = phase_table(&kin, a.max_two_j, a.method, execution(&a.common))?;
    let mut checks = Vec::new();
    if a.method == SMatrixMethod::Exact {
        let worst = table.iter().map(|e| (e.value.norm() - 1.0).abs()).fold(0.0, f64::max);
        checks.push(Check::at_most("unitarity", "max ||S| - 1|", worst, 1e-12));
    }
    let rows = phase_rows(&table, &kin)?;
    emit(&a.common, Format::Csv, metadata(echo, Some(kin), checks, serde_json::Value::Null), rows)?;
    Ok(Status::Passed)
}

fn summation_options(a: &AmplitudeArgs, echo: &mut Echo) -> SummationOptions {
    let s = &a.summation;
    let opts = SummationOptions {
        epsilon0: s.epsilon0,
        levels: s.levels,
        richardson_order: s.richardson_order,
        max_two_j: s.max_two_j,
        tail_tol: s.tail_tol,
        diag_tol: s.diag_tol,
        subtract_unity: s.subtract_unity,
        execution: execution(&a.common),
    };
    for (k, v) in [
        ("epsilon0", opts.epsilon0.to_string()),
        ("levels", opts.levels.to_string()),
        ("richardson_order", opts.richardson_order.to_string()),
        ("max_two_j", opts.max_two_j.to_string()),
        ("tail_tol", opts.tail_tol.to_string()),
        ("diag_tol", opts.diag_tol.to_string()),
        ("subtract_unity", opts.subtract_unity.to_string()),
    ] {
        echo.insert(k.into(), v);
    }
    opts
}

fn summed(method: AmplitudeMethod) -> bool {
    matches!(method, AmplitudeMethod::SeriesExact | AmplitudeMethod::SeriesF1PlusClosedF0 | AmplitudeMethod::SeriesF1)
}

fn amplitude(a: AmplitudeArgs) -> Result<Status> {
    let mut echo = Echo::new();
    let kin = resolve(&a.physics, &mut echo)?;
    let unit = length_unit(&a.units, &mut echo)?;
    let grid = angle_grid(&a.grid, &mut echo)?;
    echo.insert("method".into(), a.method.as_str().into());
    let opts = summation_options(&a, &mut echo);
    let amp: AmplitudeGrid = f_series(&grid, &kin, a.method, &opts)?;
    if !amp.all_converged() {
        let flagged = amp.converged.iter().filter(|c| !**c).count();
        eprintln!("warning: {flagged} of {} angles exceed diag_tol {:.1e}", amp.len(), opts.diag_tol);
    }
    let mut checks = Vec::new();
    if summed(a.method) {
        let worst = amp.diagnostics.iter().copied().fold(0.0, f64::max);
        checks.push(Check::at_most("summation_diagnostic", "max per-angle estimate", worst, opts.diag_tol));
    }
    let mut rows = amplitude_rows(&amp, &kin);
    if let Some(l) = unit {
        let r = l.sqrt();
        for row in &mut rows {
            row.re_f *= r;
            row.im_f *= r;
            row.diag *= r;
            row.sigma *= l;
            row.sigma_closed *= l;
        }
    }
    emit(&a.common, Format::Csv, metadata(echo, Some(kin), checks, to_value(&opts)), rows)?;
    Ok(Status::Passed)
}

fn cross_section(a: CrossSectionArgs) -> Result<Status> {
    let mut echo = Echo::new();
    let kin = resolve(&a.physics, &mut echo)?;
    let unit = length_unit(&a.units, &mut echo)?;
    let grid = angle_grid(&a.grid, &mut echo)?;
    let cs = sigma(&grid, &kin);
    let checks =
        vec![Check::at_most("amplitude_consistency", "max |(|f|^2 / sigma) - 1|", cs.max_relative_mismatch, 1e-12)];
    let mut rows = cross_section_rows(&cs, &kin);
    if let Some(l) = unit {
        for row in &mut rows {
            row.sigma *= l;
            row.sigma_amplitude *= l;
            row.sigma_born *= l;
        }
    }
    emit(&a.common, Format::Csv, metadata(echo, Some(kin), checks, serde_json::Value::Null), rows)?;
    Ok(Status::Passed)
}

fn radial(a: RadialArgs) -> Result<Status> {
    let mut echo = Echo::new();
    let kin = resolve(&a.physics, &mut echo)?;
    let j = AngularMomentum::new(a.two_j)?;
    if !(a.rho_min > 0.0 && a.rho_max > a.rho_min && a.points >= 2) {
        return Err(invalid("rho", "need 0 < rho-min < rho-max and at least 2 points"));
    }
    let rho = match a.spacing {
        Spacing::Log => log_grid(a.rho_min, a.rho_max, a.points),
        Spacing::Linear => linear_grid(a.rho_min, a.rho_max, a.points),
    };
    for (k, v) in [
        ("two_j", a.two_j.to_string()),
        ("rho_min", a.rho_min.to_string()),
        ("rho_max", a.rho_max.to_string()),
        ("points", a.points.to_string()),
        ("spacing", format!("{:?}", a.spacing).to_lowercase()),
        ("source", format!("{:?}", a.source).to_lowercase()),
    ] {
        echo.insert(k.into(), v);
    }
    let ode = OdeOptions { rho0: a.rho0, rtol: a.rtol, ..OdeOptions::default() };
    let fit = FitOptions { window: [a.fit_min, a.fit_max], component: a.fit_component.into(), ..FitOptions::default() };

    let mut checks = Vec::new();
    let sol: RadialSolution = match a.source {
        Source::Kummer => {
            let residual = kummer_radial_residual(j, &kin, &rho)?;
            checks.push(Check::at_most(
                "system_residual",
                "max relative residual of the radial system",
                residual,
                1e-8,
            ));
            kummer_radial(j, &kin, &rho)?
        }
        Source::Ode => {
            echo.insert("rho0".into(), a.rho0.to_string());
            echo.insert("rtol".into(), a.rtol.to_string());
            ode_integrate(j, &kin, &rho, &ode)?
        }
    };
    if a.fit {
        echo.insert("fit_window".into(), format!("{},{}", a.fit_min, a.fit_max));
        let extracted = oracle_phase(j, &kin, &ode, &fit)?;
        let exact = s_matrix_exact(j, &kin)?.eta_principal;
        checks.push(Check::at_most(
            "phase_vs_exact",
            format!("fitted eta {} vs exact {exact}", extracted.eta),
            eta_distance_mod_pi(extracted.eta, exact),
            1e-6,
        ));
        checks.push(Check::at_most("fit_residual", "relative rms residual", extracted.residual, fit.max_residual));
    }
    let options = serde_json::json!({ "ode": to_value(&ode), "fit": to_value(&fit) });
    emit(&a.common, Format::Csv, metadata(echo, Some(kin), checks, options), radial_rows(&sol))?;
    Ok(Status::Passed)
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    metadata: Metadata,
    report: &'a Report,
}

fn verify(a: VerifyArgs) -> Result<Status> {
    let opts = VerifyOptions {
        seed: a.seed,
        gamma_fault: a.inject_gamma_fault.unwrap_or(0.0),
        execution: execution(&a.common),
    };
    let mut report = run_suite(a.suite, &opts)?;
    for c in &report.criteria {
        eprintln!("{}", c.summary());
    }
    if a.common.no_timestamp {
        report = report.without_timing();
    }
    let echo =
        Echo::from([("suite".to_string(), a.suite.as_str().to_string()), ("seed".to_string(), a.seed.to_string())]);
    let checks = report.criteria.iter().flat_map(|c| c.checks.iter().cloned()).collect();
    let meta = metadata(echo, None, checks, to_value(&opts));
    let out = sink(&a.common)?;
    match a.common.format.unwrap_or(Format::Json) {
        Format::Csv => write_csv(out, &check_rows(&report))?,
        Format::Table => write_table(out, &check_rows(&report))?,
        Format::Json => {
            let meta = if a.common.no_timestamp { meta } else { meta.stamped() };
            write_json(out, &VerifyDocument { metadata: meta, report: &report })?
        }
    }
    Ok(if report.passed { Status::Passed } else { Status::ChecksFailed })
}
