use std::path::PathBuf;

use iqpe_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Input { path: PathBuf, line: usize, message: String },
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: CoreError },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Input { .. } | CliError::Config { .. } => 1,
            CliError::Core(e) => {
                if is_input_error(e) {
                    1
                } else {
                    2
                }
            }
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

/// Errors caused by the values the user asked for rather than by a
/// computation going wrong.
fn is_input_error(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::InvalidArgument { .. }
            | CoreError::OrderOutOfRange { .. }
            | CoreError::InvalidCharge { .. }
            | CoreError::Nyquist { .. }
            | CoreError::BandOutsideNyquist { .. }
            | CoreError::DegenerateFit { .. }
            | CoreError::NoData
            | CoreError::Config { .. }
    )
}
