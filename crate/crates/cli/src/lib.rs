//! Command-line front end for `sepscan-core`.
//!
//! Exit codes: 0 success (including "not detected"), 2 malformed input,
//! 3 numerical or method failure.

pub mod args;
pub mod commands;
pub mod io;
pub mod report;

use std::fmt;

pub use args::Cli;
pub use commands::run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    /// Error kind from the library, or `Input` for parse and I/O failures.
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { kind: "Input".into(), message: message.into(), exit_code: EXIT_INPUT }
    }
}

impl From<sepscan_core::Error> for CliError {
    fn from(e: sepscan_core::Error) -> Self {
        let exit_code = if e.is_input_error() { EXIT_INPUT } else { EXIT_NUMERICAL };
        Self { kind: e.kind().into(), message: e.to_string(), exit_code }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}
