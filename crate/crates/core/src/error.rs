use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("illegal rank {rank} for family {family}")]
    IllegalRank { family: char, rank: usize },
    #[error("unknown root system name `{0}`")]
    UnknownSystem(String),
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("unknown structure-constant convention `{0}`")]
    UnknownConvention(String),
    #[error("representation kind {kind} is not available for {system}")]
    KindMismatch { kind: String, system: String },
    #[error("commutator peeling left a non-identity residual for pair ({0}, {1})")]
    PeelFailure(String, String),
    #[error("modulus polynomial is reducible or not monic")]
    ReducibleModulusPolynomial,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("ring is infinite")]
    InfiniteRing,
    #[error("ring is not local")]
    NotLocal,
    #[error("parameter is not a unit")]
    NonUnitParameter,
    #[error("denominator is not a unit")]
    NonUnitDenominator,
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("element is not in the big cell")]
    NotInBigCell,
    #[error("rewriting did not converge within budget")]
    RewriteDivergence,
    #[error("target unavailable: {0}")]
    TargetUnavailable(String),
    #[error("interpretation case unavailable: {0}")]
    CaseUnavailable(String),
    #[error("element is not in the carrier")]
    NotInCarrier,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("bad ring spec `{0}`")]
    BadRingSpec(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("{file}: {inner}")]
    InFile { file: String, inner: Box<Error> },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
