//! Command-line tooling, file formats and acceptance checks around
//! `taugraph-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod parallel;
pub mod stats;
pub mod verify;

pub use error::{CliError, CliResult};
