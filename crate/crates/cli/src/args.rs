use std::f64::consts::PI;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coulomb2d::amplitude::{AmplitudeMethod, SummationOptions, DEFAULT_FORWARD_CUTOFF};
use coulomb2d::kinematics::{ELECTRON_MASS_MEV, FINE_STRUCTURE_ALPHA};
use coulomb2d::radial::{FitComponent, FitOptions, OdeOptions};
use coulomb2d::verify::{Suite, VerifyOptions};
use coulomb2d::{SMatrixMethod, Species};

#[derive(Debug, Parser)]
#[command(
    name = "coulomb2d",
    version,
    about = "Relativistic Coulomb scattering of Dirac particles in two dimensions",
    args_override_self = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived kinematic quantities.
    #[command(args_override_self = true)]
    Kinematics(KinematicsArgs),
    /// Partial-wave S-matrix elements and phase shifts.
    #[command(args_override_self = true)]
    PhaseShifts(PhaseShiftArgs),
    /// Scattering amplitude f(theta) on an angle grid.
    #[command(args_override_self = true)]
    Amplitude(AmplitudeArgs),
    /// Differential cross section from the closed formula.
    #[command(args_override_self = true)]
    CrossSection(CrossSectionArgs),
    /// Radial solutions (u, v) and (f, g) for one channel.
    #[command(args_override_self = true)]
    Radial(RadialArgs),
    /// Run the acceptance checks and write a report.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Physics {
    /// Nuclear charge Z.
    #[arg(long, default_value_t = 1)]
    pub z: u32,
    #[arg(long, default_value = "electron")]
    pub particle: Species,
    #[command(flatten)]
    pub energy: Energy,
    /// Fine-structure constant.
    #[arg(long, default_value_t = FINE_STRUCTURE_ALPHA)]
    pub alpha: f64,
    /// Permit |gamma| >= 1/2 where the formulas stay defined.
    #[arg(long)]
    pub allow_strong_coupling: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Energy {
    /// Total energy over rest energy, E / (mu c^2).
    #[arg(long)]
    pub energy_ratio: Option<f64>,
    /// Velocity v / c.
    #[arg(long)]
    pub v_over_c: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    /// hbar = c = mu = 1.
    Dimensionless,
    /// Lengths in fm, energies in MeV.
    Physical,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Leave the timestamp out of JSON metadata.
    #[arg(long)]
    pub no_timestamp: bool,
    /// File of `key = value` lines using the long flag names; flags given on
    /// the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Single-threaded evaluation.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct UnitArgs {
    #[arg(long, value_enum, default_value_t = Units::Dimensionless)]
    pub units: Units,
    /// Rest energy mu c^2 in MeV, used with `--units physical`.
    #[arg(long, default_value_t = ELECTRON_MASS_MEV)]
    pub mass_mev: f64,
}

/// Comma-separated angles in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleList(pub Vec<f64>);

impl FromStr for AngleList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad angle {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(AngleList)
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Number of uniformly spaced angles.
    #[arg(long, default_value_t = 64)]
    pub count: usize,
    #[arg(long, default_value_t = PI / 32.0)]
    pub theta_min: f64,
    #[arg(long, default_value_t = 63.0 * PI / 32.0)]
    pub theta_max: f64,
    /// Explicit angles, replacing the uniform grid.
    #[arg(long)]
    pub thetas: Option<AngleList>,
    /// Smallest allowed distance from the forward direction.
    #[arg(long, default_value_t = DEFAULT_FORWARD_CUTOFF)]
    pub cutoff: f64,
}

#[derive(Debug, Args)]
pub struct SummationArgs {
    #[arg(long, default_value_t = SummationOptions::default().epsilon0)]
    pub epsilon0: f64,
    #[arg(long, default_value_t = SummationOptions::default().levels)]
    pub levels: usize,
    #[arg(long, default_value_t = SummationOptions::default().richardson_order)]
    pub richardson_order: usize,
    #[arg(long, default_value_t = SummationOptions::default().max_two_j)]
    pub max_two_j: u32,
    #[arg(long, default_value_t = SummationOptions::default().tail_tol)]
    pub tail_tol: f64,
    #[arg(long, default_value_t = SummationOptions::default().diag_tol)]
    pub diag_tol: f64,
    /// Sum exp(2 i eta) - 1 instead of exp(2 i eta).
    #[arg(long)]
    pub subtract_unity: bool,
}

#[derive(Debug, Args)]
pub struct KinematicsArgs {
    #[command(flatten)]
    pub physics: Physics,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PhaseShiftArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Largest |two_j| in the table.
    #[arg(long, alias = "jmax", default_value_t = 21)]
    pub max_two_j: u32,
    /// exact, small_gamma or nonrel.
    #[arg(long, default_value = "exact")]
    pub method: SMatrixMethod,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AmplitudeArgs {
    #[command(flatten)]
    pub physics: Physics,
    #[command(flatten)]
    pub grid: GridArgs,
    /// series_exact, closed_form, series_f1_plus_closed_f0, closed_f0, closed_f1 or series_f1.
    #[arg(long, default_value = "series_exact")]
    pub method: AmplitudeMethod,
    #[command(flatten)]
    pub summation: SummationArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CrossSectionArgs {
    #[command(flatten)]
    pub physics: Physics,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Closed form in Kummer functions.
    Kummer,
    /// Direct integration of the radial system.
    Ode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Component {
    F,
    G,
    Both,
}

impl From<Component> for FitComponent {
    fn from(c: Component) -> Self {
        match c {
            Component::F => FitComponent::F,
            Component::G => FitComponent::G,
            Component::Both => FitComponent::Both,
        }
    }
}

#[derive(Debug, Args)]
pub struct RadialArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Twice the angular momentum, an odd integer.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub two_j: i32,
    #[arg(long, default_value_t = 1e-3)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 200.0)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    #[arg(long, value_enum, default_value_t = Source::Kummer)]
    pub source: Source,
    /// Starting radius for the integrator.
    #[arg(long, default_value_t = OdeOptions::default().rho0)]
    pub rho0: f64,
    #[arg(long, default_value_t = OdeOptions::default().rtol)]
    pub rtol: f64,
    /// Also fit the asymptotic phase and compare it with the exact S-matrix.
    #[arg(long)]
    pub fit: bool,
    #[arg(long, default_value_t = FitOptions::default().window[0])]
    pub fit_min: f64,
    #[arg(long, default_value_t = FitOptions::default().window[1])]
    pub fit_max: f64,
    #[arg(long, value_enum, default_value_t = Component::Both)]
    pub fit_component: Component,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// unitarity, oracle, closed_vs_series, limits or all.
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Seed for the sampled verification grids.
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    pub seed: u64,
    #[arg(long, hide = true, num_args = 0..=1, default_missing_value = "1e-6")]
    pub inject_gamma_fault: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}
