//! Command-line front end for the `clarforce` library.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod svg;

pub use commands::{run, Cli, Command};
pub use error::CliError;
