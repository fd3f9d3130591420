use thiserror::Error;
use turanpack::coloring::ColoringError;
use turanpack::constructions::ConstructionError;
use turanpack::formulas::FormulaError;
use turanpack::oracle::OracleError;
use turanpack::packing::PackingError;
use turanpack::shifting::ShiftError;

/// Every failure a command can report, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Precondition(String),
    #[error("input: {0}")]
    Input(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("soundness alarm: {0}")]
    Soundness(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Precondition(_) | CliError::Input(_) => 2,
            CliError::SizeGuard(_) => 3,
            CliError::Soundness(_) => 4,
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<PackingError> for CliError {
    fn from(e: PackingError) -> Self {
        CliError::SizeGuard(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::SizeGuard(e.to_string())
    }
}

impl From<ShiftError> for CliError {
    fn from(e: ShiftError) -> Self {
        match e {
            ShiftError::Precondition(_) => CliError::Precondition(e.to_string()),
            ShiftError::Packing(inner) => inner.into(),
            ShiftError::InvalidPartition(_) | ShiftError::InvalidShift(_) | ShiftError::SoundnessAlarm(_) => {
                CliError::Soundness(e.to_string())
            }
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::DegreeTooLarge { .. } | ColoringError::NoColors => {
                CliError::Precondition(e.to_string())
            }
            ColoringError::SizeGuard { .. } => CliError::SizeGuard(e.to_string()),
            ColoringError::Internal(_) => CliError::Soundness(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
