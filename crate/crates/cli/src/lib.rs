//! Command-line front end for the `expdio` library.

pub mod commands;
pub mod config;
pub mod output;
pub mod record;

pub use commands::{run, status_of, Status};
pub use config::RunConfig;
pub use output::CliError;
pub use record::ResultRecord;
