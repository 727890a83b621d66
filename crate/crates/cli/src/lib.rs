//! Command-line front end for `mlq-core`: JSON documents, dot-diagram
//! rendering, verification suites and the `mlq` subcommands.

pub mod commands;
pub mod error;
pub mod io;
pub mod render;
pub mod verify;

pub use error::{CliError, CliResult};
