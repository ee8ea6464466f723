//! Command-line front end: run configurations, curve tables, and the
//! implementations behind the `eures` subcommands (`resonance`, `sweep`,
//! `trajectory`, `pulse`, `scenario`, `check`).

pub mod commands;
pub mod config;
pub mod table;

pub use commands::{cmd_check, cmd_pulse, cmd_resonance, cmd_scenario, cmd_sweep, cmd_trajectory};
pub use config::RunConfig;
pub use table::{fmt_g17, CurveTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("validity failure under --strict: {0}")]
    Validity(String),
}

impl CliError {
    /// Script-friendly exit codes: 2 config, 3 solver, 4 strict-validity.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Validity(_) => 4,
        }
    }

    /// Machine-readable error payload for stderr.
    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            CliError::Config(_) => "config",
            CliError::Solver(_) => "solver",
            CliError::Validity(_) => "validity",
        };
        serde_json::json!({ "error": { "kind": kind, "message": self.to_string() } })
    }
}

impl From<crate::triangular::TriangularError> for CliError {
    fn from(e: crate::triangular::TriangularError) -> Self {
        match e {
            crate::triangular::TriangularError::InvalidBarrier(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<crate::smooth::SmoothError> for CliError {
    fn from(e: crate::smooth::SmoothError) -> Self {
        match e {
            crate::smooth::SmoothError::InvalidInput(_)
            | crate::smooth::SmoothError::Tabulated(_) => CliError::Config(e.to_string()),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<crate::pulses::PulseError> for CliError {
    fn from(e: crate::pulses::PulseError) -> Self {
        match e {
            crate::pulses::PulseError::InvalidParameter(_)
            | crate::pulses::PulseError::WrongShape { .. } => CliError::Config(e.to_string()),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<crate::scenarios::ScenarioError> for CliError {
    fn from(e: crate::scenarios::ScenarioError) -> Self {
        match e {
            crate::scenarios::ScenarioError::InvalidInput(_) => CliError::Config(e.to_string()),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<crate::quantities::UnitError> for CliError {
    fn from(e: crate::quantities::UnitError) -> Self {
        CliError::Config(e.to_string())
    }
}

/// What a command produced: a JSON report or a numeric curve table.
#[derive(Debug, Clone)]
pub enum Output {
    Json(serde_json::Value),
    Table(CurveTable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Output {
    pub fn render(&self, format: OutputFormat) -> String {
        match (self, format) {
            (Output::Table(t), OutputFormat::Csv) => t.to_csv(),
            (Output::Table(t), OutputFormat::Json) => {
                let mut s = serde_json::to_string_pretty(&t.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            (Output::Json(v), _) => {
                let mut s = serde_json::to_string_pretty(v).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}
