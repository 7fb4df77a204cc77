use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "iqpe", version, about = "Indefinite-time-direction phase estimation toolkit")]
pub struct Cli {
    /// Seed for stochastic runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Experiment configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// QFI maps over the Poincaré or modal sphere.
    QfiMap(QfiMapArgs),
    /// QFIs of the Kerr phase for a coherent probe.
    Kerr(KerrArgs),
    /// Monte-Carlo precision of the rotation protocol.
    RotationSim(RotationSimArgs),
    /// Emulated two-detector experiment driven by `--config`.
    Experiment,
    /// Linear fit of mean phase against OAM value.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Birefringence,
    Rotation,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Birefringence => "birefringence",
            Scenario::Rotation => "rotation",
        }
    }
}

#[derive(Debug, Args)]
pub struct QfiMapArgs {
    #[arg(long, value_enum)]
    pub scenario: Scenario,
    /// Mode order N (rotation scenario only).
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Polar samples; the grid has `resolution x 2*resolution` points.
    #[arg(long, default_value_t = 32)]
    pub resolution: usize,
}

#[derive(Debug, Args)]
pub struct KerrArgs {
    /// Mean photon number of the coherent probe.
    #[arg(long)]
    pub nbar: f64,
    /// Fock-space truncation; chosen from `nbar` when omitted.
    #[arg(long)]
    pub truncation: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Statistics {
    Binomial,
    Poisson,
}

#[derive(Debug, Args)]
pub struct RotationSimArgs {
    #[arg(long)]
    pub l: u32,
    /// True rotation angle, degrees.
    #[arg(long, default_value_t = 0.001)]
    pub alpha_deg: f64,
    /// Additional relative phase, degrees.
    #[arg(long, default_value_t = 0.0)]
    pub delta_phi_deg: f64,
    /// Photons per acquisition.
    #[arg(long, default_value_t = 1_000_000)]
    pub nu: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Statistics::Binomial)]
    pub statistics: Statistics,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV with header `l,phi_rad`.
    #[arg(long)]
    pub input: PathBuf,
}
