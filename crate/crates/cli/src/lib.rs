//! Front end for `pxbiharm`: configuration loading and the subcommands
//! behind the binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;

use std::fmt;

/// Failure classes, each with a fixed exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Valid input for which the requested object does not exist.
    Infeasible(String),
    /// Malformed or out-of-range input.
    Invalid(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
