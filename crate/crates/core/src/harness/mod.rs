//! Persistence, run configuration, and the command surface behind the CLI.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

pub use cache::{FileStore, FORMAT_VERSION};
pub use commands::{
    cmd_bessel, cmd_gamma, cmd_kloosterman, cmd_reps, cmd_table, cmd_verify, parse_scope, Selector,
};
pub use config::RunConfig;
pub use report::{Format, GammaRow, Table};
