//! Command-line front end for `kawahara-core`: parameter intake, pipeline
//! runs, CSV/JSON emission and tolerance-gated comparisons.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod pipeline;
pub mod report;
pub mod tolerances;

pub use args::{Cli, Command, RunArgs};
pub use config::{Format, RunConfig};
pub use error::{CliError, ExitCode};
pub use tolerances::{Profile, Tolerances};
