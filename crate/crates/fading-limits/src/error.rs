use fading_limits_core::Error as CoreError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    Numerical = 2,
    OracleDisagreement = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("Monte Carlo disagrees with the reference: {0}")]
    Disagreement(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Usage(_) | Self::Core(CoreError::Domain(_)) | Self::Core(CoreError::Unsupported { .. }) => {
                ExitCode::Usage
            }
            Self::Core(CoreError::Numerical(_)) | Self::Io(_) => ExitCode::Numerical,
            Self::Disagreement(_) => ExitCode::OracleDisagreement,
        }
    }
}
