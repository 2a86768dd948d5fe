//! Command-line front end for extremal qudit states and entropy-energy bounds.
//!
//! Every command turns a [`config::RunConfig`] into an [`output::Table`] plus
//! a short summary, and reports how the run ended through [`Status`].

pub mod config;
pub mod output;
pub mod presets;
pub mod run;

use std::fmt;

/// How a completed run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    SolverFailure,
    InvariantViolation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvariantViolation => 1,
            Status::SolverFailure => 3,
        }
    }
}

/// Errors that stop a run before it produces output.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Solver(String),
    Invariant(String),
}

impl CliError {
    pub fn from_core(e: qudit_extremal::Error) -> Self {
        match e {
            qudit_extremal::Error::SolverFailure { .. } => CliError::Solver(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Invariant(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Solver(m) => write!(f, "solver failure: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
