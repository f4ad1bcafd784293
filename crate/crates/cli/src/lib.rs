//! Command-line front end for the rarepat miner: input loading, report
//! rendering, run manifests, benchmark sweeps, and the clap surface itself.
//!
//! Everything lives in the library so integration tests can drive the same
//! code paths the binary uses; `main` only parses arguments and maps errors
//! to exit codes.

pub mod bench;
pub mod cli;
pub mod gen;
pub mod io;
pub mod manifest;
pub mod report;
pub mod runner;

use std::fmt;

/// Failure of a command, split by who got it wrong. Usage errors exit with
/// code 2, runtime errors with code 1.
#[derive(Debug)]
pub enum CliError {
    /// The flags themselves are invalid, independent of any input data.
    Usage(String),
    /// The flags were fine but the run failed: I/O, parsing, mining.
    Runtime(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            // Alternate form prints the whole anyhow context chain.
            CliError::Runtime(err) => write!(f, "{err:#}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(err: anyhow::Error) -> Self {
        CliError::Runtime(err)
    }
}

pub type CommandResult = Result<(), CliError>;
