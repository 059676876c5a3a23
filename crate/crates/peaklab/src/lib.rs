//! Command-line surface for `peaklab-core`: cycle-type parsing, JSON/CSV
//! output, thread-count independent sampling and the verification suites.

pub mod config;
pub mod cycle_spec;
pub mod experiment;
pub mod format;
pub mod verify;

use std::fmt;

use peaklab_core::Error as CoreError;

pub use cycle_spec::{parse_cycle_type, parse_cycle_type_for, ParseError};

/// Exit codes of the `peaklab` binary.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const SIZE_LIMIT: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    SizeLimit(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::SizeLimit(_) => exit::SIZE_LIMIT,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::SizeLimit(m) => write!(f, "size limit: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            CoreError::Domain(_) | CoreError::InvalidCycleType(_) | CoreError::InvalidPermutation(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}
