use crate::proofaudit::AuditReport;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("entry at row {row}, column {col} is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("a frame needs at least 2 rows, got {n}")]
    TooFewRows { n: usize },

    #[error(
        "columns are not orthonormal: |x.x - 1| = {col_x:.3e}, |y.y - 1| = {col_y:.3e}, \
         |x.y| = {cross:.3e}, tolerance {tol:.3e}"
    )]
    NotOrthonormal {
        col_x: f64,
        col_y: f64,
        cross: f64,
        tol: f64,
    },

    #[error("row index {index} out of range for {n} rows")]
    RowOutOfRange { index: usize, n: usize },

    #[error("invalid row pair ({i}, {j})")]
    InvalidRowPair { i: usize, j: usize },

    #[error("(c, s) = ({c}, {s}) does not describe a rotation")]
    NotARotation { c: f64, s: f64 },

    #[error("case precondition violated: {detail}")]
    WrongCase { detail: String },

    #[error("selection failed certification: {detail}")]
    Certification {
        detail: String,
        /// Diagnostic audit of the input frame, for post-mortem inspection.
        report: Box<AuditReport>,
    },

    #[error("certificate does not replay: {detail}")]
    Replay { detail: String },

    #[error("n = {n} exceeds the oracle cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("{0}")]
    Domain(String),

    #[error("generator gave up after {attempts} attempts")]
    RetryLimit { attempts: usize },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed report: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
