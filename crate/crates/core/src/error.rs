use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the operators, elliptic solves and time integration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid direction {direction} for a {dim}-dimensional grid")]
    InvalidDirection { direction: usize, dim: usize },

    #[error("unsupported Calderon power {0}: only nonnegative powers are available")]
    UnsupportedPower(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Data for which the elliptic problem has no decaying solution.
    #[error("infeasible data: {what} (residual {residual:.3e}, tolerance {tolerance:.3e})")]
    Infeasible {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    /// Source data that has not decayed at the bottom of the truncated strip.
    #[error("depth truncation: |b| = {value:.3e} at the deepest level exceeds {tolerance:.3e}")]
    Truncation { value: f64, tolerance: f64 },

    #[error("blow-up at t = {time}: {reason}")]
    BlowUp { time: f64, reason: String },

    /// Run configuration rejected; `line` is 1-based when the key came from a file.
    #[error("config error at {}: {key}: {message}", line.map_or("(no line)".to_string(), |l| format!("line {l}")))]
    Config {
        line: Option<usize>,
        key: String,
        message: String,
    },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
