//! Serialization, reports and figures for the `chainpoly` command.

pub mod commands;
pub mod record;
pub mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] chainpoly_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for anything the caller can fix by changing arguments, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            _ => 1,
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// A mathematical check failed.
    Fail,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Pass => ExitCode::SUCCESS,
            Outcome::Fail => ExitCode::from(1),
        }
    }
}

/// Parses `"num/den"` (or a bare integer) into an exact fraction.
pub fn parse_fraction(s: &str) -> Result<Ratio<u64>, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: u64 = num
        .parse()
        .map_err(|_| format!("malformed fraction {s:?}: bad numerator"))?;
    let den: u64 = den
        .parse()
        .map_err(|_| format!("malformed fraction {s:?}: bad denominator"))?;
    if den == 0 {
        return Err(format!("malformed fraction {s:?}: zero denominator"));
    }
    Ok(Ratio::new(num, den))
}
