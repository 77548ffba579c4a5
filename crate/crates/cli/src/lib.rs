//! Command-line surface of the workbench: config ingestion, CSV and JSON
//! output, and the acceptance runner.

pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;
pub mod output;

pub use error::CliError;
