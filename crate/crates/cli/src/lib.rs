//! Front end for `kpn-core`: the `.net` text format, stream CSV files,
//! simulation configs, and the bodies of the `kpn` subcommands.

pub mod commands;
pub mod config;
pub mod csvio;
pub mod dsl;
pub mod error;
pub mod expr;

pub use commands::Outcome;
pub use error::CliError;
