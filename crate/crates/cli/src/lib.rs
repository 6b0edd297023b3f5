//! Command-line front end: argument parsing, instance configuration,
//! per-instance runners and the report format.

pub mod args;
pub mod config;
pub mod report;
pub mod run;

pub use args::Cli;
pub use report::{InstanceReport, Report, Verdict};
pub use run::{execute, CliError, Outcome};
