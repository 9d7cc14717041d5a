use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("matrix is not Hermitian (max |H - H^dagger| = {max_deviation:e})")]
    NotHermitian { max_deviation: f64 },

    #[error("spectrum too large: {count} entries exceeds enumeration cap {cap}")]
    SpectrumTooLarge { count: String, cap: usize },

    #[error("cannot draw {requested} samples without replacement from a population of {available}")]
    InsufficientPopulation { requested: usize, available: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("linear system is singular or not positive definite")]
    SingularSystem,

    #[error("dense problem of size {size} exceeds cap {cap}")]
    ProblemTooLarge { size: usize, cap: usize },

    #[error("training diverged at epoch {epoch}: non-finite loss")]
    DivergedTraining { epoch: usize },

    #[error("Shannon criterion violated: need at least {required} points per dimension, got {got}")]
    ShannonViolation { required: usize, got: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("grid step {step} is too coarse: need step < epsilon / C = {limit}")]
    StepTooCoarse { step: f64, limit: f64 },

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for the command line tool: 1 for configuration and
    /// input problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_)
            | Error::Parse { .. }
            | Error::Config(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_)
            | Error::Shape(_)
            | Error::InsufficientPopulation { .. }
            | Error::ShannonViolation { .. }
            | Error::StepTooCoarse { .. } => 1,
            Error::NotHermitian { .. }
            | Error::SpectrumTooLarge { .. }
            | Error::SingularSystem
            | Error::ProblemTooLarge { .. }
            | Error::DivergedTraining { .. }
            | Error::InsufficientData(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
