use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational: {0}")]
    InvalidRational(String),

    #[error("p-adic valuation of zero is +infinity")]
    ValuationOfZero,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// Raised by quotient-ring inversion; `gcd` is the common factor with the modulus.
    #[error("element is not invertible: gcd with the modulus is {gcd}")]
    NotInvertible { gcd: String },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("parameter t = {0} is outside the domain (t = -1 is excluded)")]
    ParameterDomain(String),

    #[error("polynomial is reducible over Q: {0}")]
    Reducible(String),

    #[error("element is not a root of the given polynomial")]
    NotARoot,

    #[error("parse error: {0}")]
    Parse(String),
}
