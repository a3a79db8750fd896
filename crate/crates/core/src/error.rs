use thiserror::Error;

/// Errors shared by the whole toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image row is not a bijection on 1..={degree}: {reason}")]
    NotBijective { degree: usize, reason: String },

    #[error("generator set is empty")]
    EmptyGenerators,

    #[error("group too large: order {order} exceeds the hard cap {cap} (--max-order)")]
    GroupTooLarge { order: u128, cap: u64 },

    #[error(
        "operation needs the element store: order {order} exceeds the exhaustive cap {cap} (--max-exhaustive)"
    )]
    StoreRequired { order: u64, cap: u64 },

    #[error("pair enumeration skipped: order {order} exceeds the pair cap {cap}")]
    PairCapExceeded { order: u64, cap: u64 },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("subgroup relation does not hold: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("element of order {element_order} is not a {prime}-element")]
    NotPElement { element_order: u64, prime: u64 },

    #[error("GF({0}) is not a supported field size")]
    UnsupportedField(u64),

    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u64 },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
