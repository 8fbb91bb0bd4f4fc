use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus must be an odd positive integer, got {0}")]
    EvenModulus(String),

    #[error("invalid dyadic rational: {0}")]
    ParseDyadic(String),

    #[error("generator list is empty or all zero")]
    TrivialGenerators,

    #[error("root of unity order must be positive")]
    ZeroOrder,

    #[error("invalid solenoid point: {0}")]
    InvalidPoint(String),

    #[error("prefix exhausted")]
    PrefixExhausted,

    #[error("insufficient precision: need coordinate {needed}, prefix has {available}")]
    InsufficientPrecision { needed: usize, available: usize },

    #[error("periodicity is undecidable for truncated points")]
    TruncatedPeriodicity,

    #[error("point is not periodic with period {0}")]
    NotPeriodic(usize),

    #[error("measure weights sum to {0}, expected 1")]
    BadMass(f64),

    #[error("space mismatch: {0}")]
    SpaceMismatch(&'static str),

    #[error("test function family is empty")]
    EmptyFamily,

    #[error("input not invariant enough (discrepancy {discrepancy:e} > slack {slack:e})")]
    NotInvariant { discrepancy: f64, slack: f64 },

    #[error("denominator {den} shares a factor with scaling level {k}")]
    ScaleNotCoprime { den: String, k: u64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not irreducibly intertwined (nullspace dimension {0})")]
    NotIrreducible(usize),

    #[error("no intertwiner (residual {0:e})")]
    NoIntertwiner(f64),

    #[error("spectrum period {period} does not divide block count {n}")]
    PeriodMismatch { period: usize, n: usize },

    #[error("phase order {order} does not divide level {k}")]
    PhaseOrder { order: String, k: u64 },

    #[error("product not resolvable in window: {0}")]
    Unresolvable(String),

    #[error("enumeration infeasible: |G| = {0}")]
    Infeasible(u64),

    #[error("unsupported inducing subgroup in the dyadic case")]
    UnsupportedSubgroup,

    #[error("element {0} is outside the representable depth")]
    TooDeep(String),

    #[error("corner dimension {n} exceeds ambient dimension {m}")]
    CornerTooLarge { n: usize, m: usize },

    #[error("window element {0} not covered")]
    Coverage(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
