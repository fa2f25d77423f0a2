use circuit_descartes::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    /// 2 invalid input, 3 not a circuit, 4 rank-deficient `C`, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidInput(_) => 2,
            CliError::Core(e) => match e {
                CoreError::NotACircuit => 3,
                CoreError::RankDeficient { .. } => 4,
                CoreError::Dimension(_)
                | CoreError::InvalidConfig(_)
                | CoreError::NotFullDimensional
                | CoreError::ZeroColumn(_)
                | CoreError::InvalidParameter(_) => 2,
                _ => 1,
            },
            CliError::Io(_) | CliError::Other(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
