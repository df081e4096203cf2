use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("invalid modulus {0:?}: {1}")]
    InvalidModulus(Vec<u32>, &'static str),
    #[error("field of order {0} exceeds the supported maximum 2^16")]
    FieldTooLarge(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element {value} does not belong to GF({q})")]
    FieldMismatch { value: u32, q: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad dimension {d} for ambient dimension {n}")]
    BadDimension { n: usize, d: usize },
    #[error("ambient space has {points} points, above the configured limit {limit}")]
    SpaceTooLarge { points: u128, limit: u128 },
    #[error("matrix is not in reduced row echelon form: {0}")]
    NotRref(String),
    #[error("subspace is not a hyperplane (dimension {dim} in V({n}))")]
    NotAHyperplane { n: usize, dim: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("not a subspace partition: point {point} {}", describe_parts(.parts))]
    NotAPartition { point: usize, parts: Vec<usize> },
    #[error("spread members {0} and {1} intersect nontrivially")]
    NotDisjoint(usize, usize),
    #[error("spread member {index} has dimension {found}, expected {expected}")]
    WrongDimension { index: usize, expected: usize, found: usize },
    #[error("spread member {0} meets the blocking subspace trivially")]
    NotBlocked(usize),
    #[error("search space too large: {0}")]
    TooLarge(String),

    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn describe_parts(parts: &[usize]) -> String {
    match parts {
        [] => "is not covered by any part".to_string(),
        [a] => format!("is covered only by part {a}"),
        _ => format!("is covered by parts {parts:?}"),
    }
}

impl Error {
    /// Input that could not be understood, as opposed to a mathematical violation.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::NotRref(_)
                | Error::FieldMismatch { .. }
                | Error::DimensionMismatch { .. }
                | Error::NonPrimeCharacteristic(_)
                | Error::ReducibleModulus(..)
                | Error::InvalidModulus(..)
                | Error::FieldTooLarge(_)
        )
    }
}
