use thiserror::Error;

/// Errors produced by every operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input document; `line` is 1-based.
    #[error("parse error: {msg} at line {line}")]
    Parse { line: usize, msg: String },

    /// An argument refers to vertices or sets outside its graph.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter is outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Exact enumeration was refused rather than silently degraded.
    #[error("exact-cap exceeded: graph has {n} vertices but the exact enumeration cap is {cap}; raise the cap or use the heuristic")]
    CapExceeded { n: usize, cap: usize },

    /// The nominal search space of an exhaustive operation is too large.
    #[error("budget exceeded: search space of about {needed} assignments exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    /// A caller-facing precondition does not hold for the given data.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A certified internal guarantee failed; this always indicates a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    /// A randomized generator gave up after the stated number of attempts.
    #[error("generator retries exhausted after {0} attempts")]
    RetriesExhausted(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
