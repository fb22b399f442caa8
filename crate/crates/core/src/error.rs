use thiserror::Error;

/// Errors raised by the computations in this crate.
///
/// Variants split into two families: precondition failures (bad input, a
/// weight outside the domain of an operation) and audit failures (an internal
/// consistency check such as `D^2 = 0` did not hold). The CLI maps them to
/// exit codes 1 and 2 respectively.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("critical level: k + n = 0")]
    CriticalLevel,
    #[error("not an admissible number: n={n}, p={p}, q={q} (need p >= n, q >= 1, gcd(p,q) = 1)")]
    NotAdmissibleNumber { n: usize, p: i64, q: i64 },
    #[error("level mismatch: weight has level {found}, expected {expected}")]
    LevelMismatch { expected: String, found: String },
    #[error("dominance violated: {0}")]
    DominanceViolated(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("orbit sign clash at {0}")]
    OrbitSignClash(String),
    #[error("orbit connectivity audit failed at {0}")]
    ConnectivityAudit(String),
    #[error("stability certificate failed: {0}")]
    StabilityFailure(String),
    #[error("D^2 != 0 in degree {degree}: entry ({row}, {col}) = {value}")]
    DSquaredNonzero {
        degree: usize,
        row: usize,
        col: usize,
        value: String,
    },
    #[error("differential breaks the weight-block structure: {0}")]
    BlockStructure(String),
    #[error("bracket fidelity failed: {0}")]
    BracketFidelity(String),
    #[error("grading audit failed: {0}")]
    GradingAudit(String),
    #[error("no generic direction found for the limit after {0} attempts")]
    DegenerateDirection(usize),
}

impl Error {
    /// True for failures of an internal audit rather than of an input precondition.
    pub fn is_audit_failure(&self) -> bool {
        matches!(
            self,
            Error::OrbitSignClash(_)
                | Error::ConnectivityAudit(_)
                | Error::StabilityFailure(_)
                | Error::DSquaredNonzero { .. }
                | Error::BlockStructure(_)
                | Error::BracketFidelity(_)
                | Error::GradingAudit(_)
                | Error::DegenerateDirection(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
