use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}: only simply-laced types A_r (r>=1), D_r (r>=4), E6, E7, E8 are available")]
    UnsupportedType { family: String, rank: usize },

    #[error("Weyl group of order {order} exceeds the configured cap of {cap} elements")]
    GroupTooLarge { order: u128, cap: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("twist vector has length {got}, expected {expected}")]
    TwistLength { got: usize, expected: usize },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("cannot evaluate at x{var}=0: negative exponent present")]
    PolarAtZero { var: usize },

    #[error("division by 2 left an odd coefficient while splitting into even and odd parts")]
    OddIntegerCoefficient,

    #[error("denominator factor became {0} after substitution; expected a one-signed exponent vector")]
    MixedSignDenominator(String),

    #[error("exponent out of range for the packed representation")]
    ExponentOverflow,

    #[error("coefficient at {point:?} is not determined by the functional equations ({reason})")]
    NotUniquelyDetermined { point: Vec<i64>, reason: String },

    #[error("numerator failed a structural assertion: {0}")]
    Structural(String),

    #[error("Jacobi symbol requires an odd positive modulus, got {0}")]
    InvalidModulus(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is gated behind the `experimental-e78` feature")]
    Experimental(String),

    #[error("malformed input: {0}")]
    Parse(String),
}
