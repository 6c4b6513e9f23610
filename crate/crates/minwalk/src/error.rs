use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes named in the
/// operation contracts, so callers can match on what went wrong rather than
/// parse messages.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument lies outside its documented domain.
    #[error("{field} out of range: {reason}")]
    OutOfRange {
        field: &'static str,
        reason: String,
    },

    /// A support size or history length would exceed its cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// The conditional step law is queried at time 0, where it is undefined
    /// (the first step is an unconditional Bernoulli(s) draw).
    #[error("degenerate step: {0}")]
    DegenerateStep(String),

    /// alpha = 1, where the requested closed form has a pole or the walk
    /// collapses to a binary limit.
    #[error("degenerate alpha: {0}")]
    DegenerateAlpha(String),

    /// alpha outside the range the memory coefficients support (alpha <= -1).
    #[error("unsupported alpha: {0}")]
    UnsupportedAlpha(String),

    /// Arguments hit a pole of a closed-form identity.
    #[error("singular case: {0}")]
    SingularCase(String),

    /// Too few observations for the requested statistic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A regression target is degenerate (nonpositive values, too few
    /// points, or no spread in the fit window).
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    /// The requested verification run violates the theorem's hypotheses.
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// Malformed run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn out_of_range(field: &'static str, reason: impl Into<String>) -> Self {
        Error::OutOfRange {
            field,
            reason: reason.into(),
        }
    }

    /// Process exit code for this error when surfaced by the CLI:
    /// 2 for configuration and hypothesis errors, 1 for runtime failures.
    /// (Statistical failures are not errors; the CLI maps them to 3.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
