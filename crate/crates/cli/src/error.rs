use std::fmt;

use fucik_core::one_dim::OneDimError;
use fucik_core::spectrum::SpectrumError;
use fucik_core::{GeometryError, PackingError};

/// Failure of a subcommand, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed input files, invalid parameters: exit 2.
    Validation(String),
    /// Budget exhausted or too many failed samples: exit 3.
    Computation(String),
    /// Reading or writing files: exit 1.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Computation(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Computation(m) => write!(f, "computation failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<PackingError> for CliError {
    fn from(e: PackingError) -> Self {
        match e {
            PackingError::Geometry(g) => g.into(),
            PackingError::InvalidParameter(m) => CliError::Validation(m),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Packing(p) => p.into(),
            SpectrumError::Invalid(m) => CliError::Validation(m),
        }
    }
}

impl From<OneDimError> for CliError {
    fn from(e: OneDimError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            CliError::Io(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
