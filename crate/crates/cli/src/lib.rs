//! Experiment runner behind the `hqdisk` binary.
//!
//! Each experiment returns an [`report::ExperimentReport`] whose records
//! serialise to CSV and whose full contents (settings echo, summary, checks)
//! serialise to JSON. Output depends only on the settings.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod lifts;
pub mod render;
pub mod report;

pub use error::{CliError, Result};
