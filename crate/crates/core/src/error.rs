use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in rings with {left} and {right} variables")]
    RingMismatch { left: usize, right: usize },

    #[error("matrix of size {matrix} cannot act on {vars} variables")]
    DimensionMismatch { matrix: usize, vars: usize },

    #[error("division is not exact")]
    DivisionNotExact,

    #[error("division by zero")]
    DivisionByZero,

    #[error("m = {m} needs a scalar field larger than {field}")]
    UnsupportedField { m: String, field: String },

    #[error("inconsistent Coxeter data: {0}")]
    InconsistentSystem(String),

    #[error("operation needs a finite Coxeter group")]
    InfiniteGroup,

    #[error("enumeration exceeded the cap of {0} elements")]
    EnumerationCap(usize),

    #[error("element does not belong to this system: {0}")]
    SystemMismatch(String),

    #[error("tensor is not in the Takeuchi product")]
    TakeuchiViolation,

    #[error("the longest element of the parabolic subgroup has no mixed relation")]
    LongestElementExcluded,

    #[error("element is not in the parabolic subgroup generated by the two generators")]
    NotInParabolic,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),
}
