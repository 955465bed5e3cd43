//! `qudit-eraser`: sweeps, identity checks and CSV data for path erasure in
//! symmetric interferometers.

mod angle;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use angle::parse_angle;

#[derive(Parser, Debug)]
#[command(name = "qudit-eraser", version, about = "Which-path erasure in symmetric two-path interferometers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Visibility, distinguishability and path information over an α sweep.
    Duality(DualityArgs),
    /// Phase and path entropies over an α sweep, with the erasure residual.
    Figure3(Figure3Args),
    /// Which-phase information averaged over φ₀ for one or several χ.
    AverageE(AverageArgs),
    /// Check the erasure identity at a single (α, β, γ).
    Erase(EraseArgs),
    /// Michelson setup with a cavity-coupled atom, from η or cavity frequencies.
    Michelson(MichelsonArgs),
    /// Random d-level ancilla: symmetric basis, sampled oracle, erasure identity.
    QuditDemo(QuditArgs),
}

/// Inclusive grid of `points` values from `start` to `stop`.
#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub start: f64,
    #[arg(long, value_parser = parse_angle, default_value = "pi")]
    pub stop: f64,
    #[arg(long, default_value_t = 33)]
    pub points: usize,
}

#[derive(Args, Debug)]
pub struct DualityArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, value_parser = parse_angle, default_value = "3pi/2")]
    pub beta: f64,
    /// Allowed |D² + V² − 1|.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Figure3Args {
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, value_parser = parse_angle, default_value = "3pi/2")]
    pub beta: f64,
    #[arg(long, value_parser = parse_angle, default_value = "pi/2")]
    pub gamma: f64,
    /// Allowed identity residual.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AverageArgs {
    #[arg(long, value_parser = parse_angle, default_value = "3pi/4")]
    pub alpha: f64,
    #[arg(long, value_parser = parse_angle, default_value = "3pi/2")]
    pub beta: f64,
    #[arg(long, value_parser = parse_angle, default_value = "pi/2")]
    pub gamma: f64,
    /// Single erasing-basis angle; without it χ is swept over [start, stop].
    #[arg(long, value_parser = parse_angle)]
    pub chi: Option<f64>,
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub start: f64,
    #[arg(long, value_parser = parse_angle, default_value = "7pi/8")]
    pub stop: f64,
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    /// Simpson panels (even, ≥ 64).
    #[arg(long, default_value_t = 2048)]
    pub panels: usize,
    /// Allowed spread of Ē across χ.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EraseArgs {
    #[arg(long, value_parser = parse_angle)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_angle, default_value = "3pi/2")]
    pub beta: f64,
    #[arg(long, value_parser = parse_angle, default_value = "pi/2")]
    pub gamma: f64,
    /// Play the phase game at this offset instead of the searched φ̃₀.
    #[arg(long, value_parser = parse_angle)]
    pub phi0: Option<f64>,
    /// Use this erasing basis instead of the optimal one.
    #[arg(long, value_parser = parse_angle)]
    pub chi: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MichelsonArgs {
    /// Conditional phase imprinted by the atom.
    #[arg(long, value_parser = parse_angle)]
    pub eta: Option<f64>,
    /// Photon frequency.
    #[arg(long)]
    pub f0: Option<f64>,
    /// Bare cavity resonance.
    #[arg(long)]
    pub f_uncoupled: Option<f64>,
    /// Dressed resonance with the atom in the coupling state.
    #[arg(long)]
    pub f_coupled: Option<f64>,
    /// Cavity field decay rate.
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QuditArgs {
    #[arg(long, default_value_t = 5)]
    pub dim: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub gamma: f64,
    /// Bases sampled by the brute-force oracle.
    #[arg(long, default_value_t = 10_000)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Duality(a) => commands::duality(a),
        Command::Figure3(a) => commands::figure3(a),
        Command::AverageE(a) => commands::average_e(a),
        Command::Erase(a) => commands::erase(a),
        Command::Michelson(a) => commands::michelson(a),
        Command::QuditDemo(a) => commands::qudit_demo(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
