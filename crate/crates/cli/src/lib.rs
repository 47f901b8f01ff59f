//! Command-line frontend for hypervolume subset selection.

pub mod args;
mod commands;
pub mod error;
pub mod record;

pub use args::Cli;
pub use commands::{emit, run, Outcome};
pub use error::{CliError, Result};
