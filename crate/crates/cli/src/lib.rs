//! Subcommand implementations behind the `xxzport` binary.

pub mod config;
pub mod critical_table;
pub mod error;
pub mod format;
pub mod point;
pub mod sweep;
pub mod verify;

pub use config::{Overrides, Settings};
pub use error::{CliError, Result};
