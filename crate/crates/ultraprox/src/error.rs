use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("point does not belong to this space")]
    CrossSpace,

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("unsupported subset spec: {0}")]
    UnsupportedSubset(String),

    #[error("empty set: {0}")]
    EmptySet(String),

    #[error("sequences indistinguishable to depth {depth}; no exact distance")]
    IndistinguishableToDepth { depth: usize },

    #[error("evaluation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
