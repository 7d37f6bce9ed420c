use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial({n}, k) requested with negative upper argument in strict mode")]
    NegativeBinomial { n: i64 },

    #[error("catalan({0}) is undefined for negative index")]
    NegativeCatalan(i64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("denominator {denominator} is not invertible modulo {modulus}")]
    DenominatorNotInvertible {
        denominator: String,
        modulus: String,
    },

    #[error("sequence {sequence} is not defined at index {index}")]
    IndexOutOfDomain { sequence: String, index: u64 },

    #[error("sequence {sequence} produced non-integral value {value} at index {index}")]
    NonIntegral {
        sequence: String,
        index: u64,
        value: String,
    },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("operator order mismatch: {0}")]
    OrderMismatch(String),

    #[error("window supplies {rows} rows but at least {required} are required")]
    WindowTooSmall { rows: u64, required: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown sequence id `{0}`")]
    UnknownSequence(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
