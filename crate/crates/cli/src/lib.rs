//! Command-line front end for `geodiscord`: single-state queries, parameter
//! sweeps and the oracle audit.

pub mod args;
pub mod audit;
pub mod commands;
pub mod config;
pub mod engine;
pub mod error;
pub mod output;
pub mod source;
pub mod sweep;

pub use commands::run;
pub use error::{CliError, CliResult};
