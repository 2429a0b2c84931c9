use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),

    #[error("Weyl group of order {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded { order: u64, budget: u64 },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("invalid Jordan form: {0}")]
    InvalidJordanForm(String),

    #[error("irregularity {0} is not a non-negative integer")]
    NonIntegralIrregularity(String),

    #[error("input is regular singular; no leading term")]
    RegularSingularInput,

    #[error("residue pairing needs unramified series, got ramification {0}")]
    RamifiedInput(u32),

    #[error("scalar must be nonzero: {0}")]
    ZeroScalar(String),

    #[error("alcove grid has {points} points, above the limit {limit}")]
    GridTooLarge { points: u128, limit: u128 },

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
