//! Front end for the `seqrules` command: file formats, commands and
//! deterministic JSON reports.

pub mod commands;
pub mod profile_file;
pub mod report;
pub mod table_file;

use thiserror::Error;

pub use commands::{AxiomsArgs, Outcome};
pub use profile_file::{format_profile, parse_profile};
pub use table_file::{parse_counting, CountingTable};

/// A syntax error in an input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at line {line}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] seqrules::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(seqrules::Error::BranchOverflow { .. } | seqrules::Error::SizeCap { .. }) => 3,
            _ => 2,
        }
    }
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
