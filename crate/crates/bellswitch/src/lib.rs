//! Command-line front end for `bellswitch-core`: circuit files, report
//! rendering and the `bellswitch` subcommands.

pub mod cli;
pub mod commands;
pub mod doc;
pub mod report;

use std::path::PathBuf;

pub use doc::CircuitDoc;

/// Exit status for a completed command whose check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for bad flags, unreadable files and invalid documents.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[source] serde_json::Error),
    #[error(transparent)]
    Core(#[from] bellswitch_core::Error),
    #[error("{0}")]
    Usage(String),
}
