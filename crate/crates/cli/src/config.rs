//! Run configuration: precision selection, output format, and the
//! invariants every subcommand checks before touching input files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Smallest mantissa size accepted for a certification run.
pub const MIN_CERTIFY_BITS: u32 = 24;

/// Smallest mantissa size accepted for an entry of a precision sweep.
/// Sweeps may dip below the certification floor on purpose: watching
/// certification fail at very low precision is part of what a sweep shows.
pub const MIN_SWEEP_BITS: u32 = 16;

/// Anything that maps to exit code 2: a bad flag value or unusable input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Invalid flag value or flag combination.
    Config(String),
    /// A file could not be read, failed to parse, or does not match the
    /// shape of the system.
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Working precision for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// Hardware binary64 endpoints with outward rounding.
    Double,
    /// Arbitrary-precision binary endpoints with this many mantissa bits.
    Bits(u32),
}

impl FromStr for Precision {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "double" {
            return Ok(Precision::Double);
        }
        if let Some(n) = s.strip_prefix("bits:") {
            if let Ok(bits) = n.parse::<u32>() {
                return Ok(Precision::Bits(bits));
            }
        }
        Err(CliError::Config(format!(
            "invalid precision '{s}': expected 'double' or 'bits:N'"
        )))
    }
}

/// Table serialization format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(CliError::Config(format!(
                "invalid format '{s}': expected 'tsv' or 'json'"
            ))),
        }
    }
}

/// One resolved invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub system_path: PathBuf,
    pub points_path: PathBuf,
    /// Box half-width exactly as the user wrote it; applied with upward
    /// rounding so the certified box is never narrower than requested.
    pub radius: String,
    pub precision: Precision,
    pub distinct: bool,
    pub format: OutputFormat,
    /// `None` writes the table to standard output.
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// Check the invariants shared by `certify` and `radius-sweep`.
    pub fn validate(&self) -> Result<(), CliError> {
        validate_radius(&self.radius)?;
        if let Precision::Bits(bits) = self.precision {
            if bits < MIN_CERTIFY_BITS {
                return Err(CliError::Config(format!(
                    "precision bits:{bits} is below the certification minimum of {MIN_CERTIFY_BITS}"
                )));
            }
        }
        Ok(())
    }
}

/// Radii must be finite nonnegative decimals.
pub fn validate_radius(radius: &str) -> Result<(), CliError> {
    match radius.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(()),
        Ok(_) => Err(CliError::Config(format!(
            "radius '{radius}' must be finite and nonnegative"
        ))),
        Err(_) => Err(CliError::Config(format!(
            "radius '{radius}' is not a decimal number"
        ))),
    }
}
