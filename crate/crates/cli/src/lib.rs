//! Command-line plumbing: configuration, records and the commands themselves.

pub mod config;
pub mod record;
pub mod run;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// bad flags, config or diagram: exit 2
    #[error("{0}")]
    Input(String),
    /// a check or computation failed: exit 1
    #[error("{0}")]
    Failure(String),
}
