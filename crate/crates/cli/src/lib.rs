//! Command-line front end for `barypoly`: stationary constants, trajectories,
//! dual sequences, verifier sweeps and SVG figures.
//!
//! The binary is a thin wrapper around [`run`]; everything here is usable
//! from tests without spawning a process.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod figure;

pub use args::Cli;
pub use commands::{
    cmd_alpha, cmd_dual, cmd_figure, cmd_trajectory, cmd_verify, fmt_f64, run, write_dual_csv, write_trajectory_csv,
    DualOutput,
};
pub use config::RunConfig;
pub use error::CliError;
pub use figure::{derived_weights, render_figure, Figure, Series};
