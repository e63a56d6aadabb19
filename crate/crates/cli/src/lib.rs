//! Command-line front end. Every number printed here is computed by
//! `foca_core`; this crate only parses arguments, prompts and formats.

pub mod args;
pub mod commands;
pub mod error;
pub mod wizard;

pub use args::Cli;
pub use commands::{run, Environment};
pub use error::CliError;
