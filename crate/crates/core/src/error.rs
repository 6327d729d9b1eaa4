use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("zero base in gauge factor")]
    ZeroBase,

    #[error("singular coordinate change: {0}")]
    SingularJacobian(String),

    #[error("coordinate map failed its round-trip probe: {0}")]
    BadCoordMap(String),

    #[error("operator has non-polynomial coefficients")]
    NonPolynomial,

    #[error("operator does not preserve P_{k} in {n} variables")]
    NotInvariant { n: usize, k: u32 },

    #[error("operators do not commute: {0}")]
    NonCommuting(String),

    #[error("irrational joint eigenvalue of the commuting family")]
    IrrationalLabel,

    #[error("inadmissible separation chain: {0}")]
    Inadmissible(String),

    #[error("separation residual does not vanish: {0}")]
    NonSeparating(String),

    #[error("hypergeometric series hits a nonpositive-integer lower parameter: {0}")]
    HypergeometricPole(String),

    #[error("(n, k) = ({n}, {k}) is outside the closed-form catalog")]
    OutOfCatalog { n: usize, k: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
}

pub type Result<T> = std::result::Result<T, Error>;
