use std::fmt;

use convinv_core::gaussian::GaussianError;
use convinv_core::io::IoError;
use convinv_core::lateral::LateralError;
use convinv_core::lattice::WindowError;
use convinv_core::neumann::NeumannError;
use convinv_core::scalar::ScalarParseError;
use convinv_core::MeasureError;

pub const CHECK_FAILED: u8 = 1;
pub const PARSE: u8 = 2;
pub const DIMENSION: u8 = 3;
pub const PRECONDITION: u8 = 4;
pub const TRUNCATION: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(PARSE, message)
    }

    pub fn dimension(message: impl Into<String>) -> Self {
        Self::new(DIMENSION, message)
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Self::new(PRECONDITION, message)
    }

    /// Prefixes the message, keeping the exit code.
    pub fn context(self, what: impl fmt::Display) -> Self {
        CliError { code: self.code, message: format!("{what}: {}", self.message) }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        Self::parse(e.to_string())
    }
}

impl From<ScalarParseError> for CliError {
    fn from(e: ScalarParseError) -> Self {
        Self::parse(e.to_string())
    }
}

impl From<WindowError> for CliError {
    fn from(e: WindowError) -> Self {
        Self::parse(e.to_string())
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        let code = match e {
            MeasureError::DimensionMismatch { .. }
            | MeasureError::UnsupportedDimension(_)
            | MeasureError::NotOneDimensional => DIMENSION,
            _ => PRECONDITION,
        };
        Self::new(code, e.to_string())
    }
}

impl From<NeumannError> for CliError {
    fn from(e: NeumannError) -> Self {
        match e {
            NeumannError::Measure(m) => m.into(),
            other => Self::precondition(other.to_string()),
        }
    }
}

impl From<LateralError> for CliError {
    fn from(e: LateralError) -> Self {
        match e {
            LateralError::Measure(m) => m.into(),
            LateralError::InsufficientTruncation { required, actual } => {
                Self::new(TRUNCATION, format!("truncation too short: required N > {required}, got N = {actual}"))
            }
            other => Self::precondition(other.to_string()),
        }
    }
}

impl From<GaussianError> for CliError {
    fn from(e: GaussianError) -> Self {
        let code = match e {
            GaussianError::ShapeMismatch | GaussianError::NotAligned => DIMENSION,
            _ => PRECONDITION,
        };
        Self::new(code, e.to_string())
    }
}
