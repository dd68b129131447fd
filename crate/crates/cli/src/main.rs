//! `rotospin`: cross sections, maps, spin-up, heating and gain for a
//! spinning polarizable rod.

mod commands;
mod config;
mod error;
mod resolve;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Loaded;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "rotospin", version, about, propagate_version = true)]
pub struct Cli {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output file. Tables go to stdout when omitted.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(flatten)]
    pub model: ModelArgs,

    #[command(flatten)]
    pub drive: DriveArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Direct,
    DrudeSphere,
    DrudeEllipsoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pol {
    Lcp,
    Rcp,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Raw,
    Figure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Sphere,
    Rod,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Kv,
}

#[derive(Debug, Default, Args)]
pub struct ModelArgs {
    /// Dimensionless units: ω₀ = c = Q²/m = 1.
    #[arg(long, global = true, conflicts_with = "physical")]
    pub normalized: bool,
    /// Gaussian-CGS units with τ = 2(Q²/m)/3c³.
    #[arg(long, global = true)]
    pub physical: bool,
    #[arg(long, global = true, value_enum)]
    pub source: Option<Source>,
    /// Intrinsic damping rate γ.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Radiation-reaction time τ (normalized mode only).
    #[arg(long, global = true)]
    pub tau: Option<f64>,
    /// Q²/m (physical direct source).
    #[arg(long, global = true)]
    pub coupling: Option<f64>,
    /// Natural frequency ω₀ (physical direct source).
    #[arg(long, global = true)]
    pub omega0: Option<f64>,
    #[arg(long, global = true)]
    pub light_speed: Option<f64>,
    #[arg(long, global = true)]
    pub plasma_frequency: Option<f64>,
    /// Sphere radius, cm.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Ellipsoid volume, cm³.
    #[arg(long, global = true)]
    pub volume: Option<f64>,
    /// Ellipsoid depolarization factor L.
    #[arg(long, global = true)]
    pub depolarization: Option<f64>,
}

#[derive(Debug, Default, Args)]
pub struct DriveArgs {
    /// Light frequency ω.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Rotation rate Ω.
    #[arg(long = "Omega", global = true, allow_negative_numbers = true)]
    pub rotation: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub pol: Option<Pol>,
    /// Complex field amplitude |E|.
    #[arg(long, global = true, conflicts_with = "intensity")]
    pub amplitude: Option<f64>,
    /// Intensity c|E|²/2π.
    #[arg(long, global = true)]
    pub intensity: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Torque, all cross sections and the balance residual at one point.
    Point(PointArgs),
    /// (ω, Ω) map of the six cross sections.
    Scan(ScanArgs),
    /// Cross sections against ω at fixed Ω.
    Spectrum(SpectrumArgs),
    /// Integrate the optical spin-up.
    Spinup(SpinupArgs),
    /// Heating equilibrium against intensity.
    Thermal(ThermalArgs),
    /// Beam propagation through a cloud of rotors.
    Amplify(AmplifyArgs),
    /// Run the invariant suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Default, Args)]
pub struct ScanArgs {
    /// fig2 or figSI2.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub omega_count: Option<usize>,
    #[arg(long = "Omega-min", allow_negative_numbers = true)]
    pub rotation_min: Option<f64>,
    #[arg(long = "Omega-max", allow_negative_numbers = true)]
    pub rotation_max: Option<f64>,
    #[arg(long = "Omega-count")]
    pub rotation_count: Option<usize>,
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    /// Also write the long-format table (omega,Omega,quantity,value).
    #[arg(long, value_name = "PATH")]
    pub long: Option<PathBuf>,
    /// Also write both resonance ellipses (branch,omega,Omega).
    #[arg(long, value_name = "PATH")]
    pub locus: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct SpectrumArgs {
    /// fig3a or fig3b.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub omega_count: Option<usize>,
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    #[arg(long, value_name = "PATH")]
    pub long: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct SpinupArgs {
    /// Target rotation rate.
    #[arg(long)]
    pub target: Option<f64>,
    #[arg(long)]
    pub initial: Option<f64>,
    #[arg(long)]
    pub max_time: Option<f64>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Treat the particle as a lossy sphere (twice the rod torque).
    #[arg(long)]
    pub sphere_torque: bool,
    /// Stop at the centrifugal burst estimate.
    #[arg(long)]
    pub check_burst: bool,
    #[command(flatten)]
    pub body: BodyArgs,
    /// Ambient temperature for the melt check.
    #[arg(long)]
    pub ambient: Option<f64>,
    /// Radiative coefficient for the melt check.
    #[arg(long)]
    pub coefficient: Option<f64>,
}

#[derive(Debug, Default, Args)]
pub struct BodyArgs {
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    /// Mass density, g/cm³.
    #[arg(long)]
    pub density: Option<f64>,
    /// Body radius; defaults to the Drude sphere radius.
    #[arg(long)]
    pub body_radius: Option<f64>,
    /// Rod length.
    #[arg(long)]
    pub length: Option<f64>,
    /// Moment of inertia (explicit shape).
    #[arg(long)]
    pub inertia: Option<f64>,
    #[arg(long)]
    pub melting_temperature: Option<f64>,
    /// erg/cm².
    #[arg(long)]
    pub surface_tension: Option<f64>,
}

#[derive(Debug, Default, Args)]
pub struct ThermalArgs {
    #[arg(long)]
    pub ambient: Option<f64>,
    #[arg(long)]
    pub coefficient: Option<f64>,
    #[arg(long)]
    pub intensity_min: Option<f64>,
    #[arg(long)]
    pub intensity_max: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Default, Args)]
pub struct AmplifyArgs {
    /// Particles per cm³.
    #[arg(long)]
    pub number_density: Option<f64>,
    #[arg(long)]
    pub path_length: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub initial_intensity: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random points per sampled check.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("ROTOSPIN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "ROTOSPIN_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = Loaded::read(cli.config.as_deref())?;
    match &cli.command {
        Command::Point(a) => commands::point(cli, &cfg, a),
        Command::Scan(a) => commands::scan(cli, &cfg, a),
        Command::Spectrum(a) => commands::spectrum(cli, &cfg, a),
        Command::Spinup(a) => commands::spinup(cli, &cfg, a),
        Command::Thermal(a) => commands::thermal(cli, &cfg, a),
        Command::Amplify(a) => commands::amplify(cli, &cfg, a),
        Command::Validate(a) => validate::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rotospin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
