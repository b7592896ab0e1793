use std::path::PathBuf;

use barypoly::analysis::CheckName;
use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "barypoly", version, about = "Derived and dual barypolygonal sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stationary point alpha_p and the spectrum of its linearization.
    Alpha(AlphaArgs),
    /// Orbit of the conjugate system as CSV.
    Trajectory(TrajectoryArgs),
    /// Limit points of the successive derived sequences as CSV or JSON.
    Dual(DualArgs),
    /// Run the verifiers and print a JSON report; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// SVG of iterated polygons under derived weights.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Inputs shared by the commands that run an orbit.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<usize>,
    /// Comma-separated weights t_1..t_p in (0, 1).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub weights: Option<Vec<f64>>,
    /// Points as JSON (`[[x, y], ...]`) or CSV, one point per row.
    #[arg(long)]
    pub points_file: Option<PathBuf>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Seed for a random sorted initial state of order p.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    /// The config file, if any, overridden by the flags.
    pub fn resolve(&self) -> Result<RunConfig, crate::CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let points = self
            .points_file
            .as_deref()
            .map(crate::config::read_points)
            .transpose()?;
        Ok(base.overridden_by(RunConfig {
            p: self.p,
            dim: None,
            weights: self.weights.clone(),
            points,
            max_steps: self.steps,
            seed: self.seed,
            output_dir: None,
        }))
    }
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Start at the stationary point of order p.
    #[arg(long, conflicts_with_all = ["weights", "seed"])]
    pub stationary: bool,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Random-seed sweep; over p = 3..8 unless --p is given.
    #[arg(long)]
    pub sweep: bool,
    /// Run a single named check.
    #[arg(long, value_parser = parse_check)]
    pub check: Option<CheckName>,
    #[arg(long, default_value_t = 100)]
    pub seeds_per_order: usize,
    /// Corrupt each trajectory before checking it, to exercise the verifiers.
    #[arg(long)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Derivative order(s); several orders are superimposed.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub order: Vec<usize>,
}

fn parse_check(s: &str) -> Result<CheckName, String> {
    s.parse::<CheckName>().map_err(|_| {
        let names: Vec<&str> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
        format!("unknown check `{s}`; expected one of {}", names.join(", "))
    })
}
