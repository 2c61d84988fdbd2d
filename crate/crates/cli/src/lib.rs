//! Command-line driver: verification runs, operator-set files and reports.

pub mod args;
pub mod claims;
pub mod commands;
pub mod report;

pub use args::Cli;
pub use commands::{run, CliError};
