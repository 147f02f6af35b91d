use thiserror::Error;

/// Every failure the library reports. Variants carry enough context to
/// reproduce the failure from the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is empty or not square")]
    NotSquare,
    #[error("diagonal entry ({i},{j}) is not 2")]
    DiagonalNotTwo { i: usize, j: usize },
    #[error("off-diagonal entry ({i},{j}) is positive")]
    PositiveOffDiagonal { i: usize, j: usize },
    #[error("entry ({i},{j}) vanishes but its transpose does not")]
    ZeroSymmetryViolated { i: usize, j: usize },
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("matrix is decomposable")]
    Decomposable,
    #[error("Y-diagram arm parameter {0} is below 2")]
    ArmTooShort(i64),
    #[error("Cartan matrix is degenerate (det = 0)")]
    DegenerateCartan,
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("{0:?} is not a real root")]
    NotARealRoot(Vec<i64>),
    #[error("highest weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("module dimension exceeds budget {budget}")]
    ResourceBudgetExceeded { budget: usize },
    #[error("depth {depth:?} is outside the truncation (max depth {max})")]
    DepthOutOfRange { depth: Vec<u32>, max: u32 },
    #[error("image leaves the truncation: {context}")]
    TruncationOverflow { context: String },
    #[error("torus or extended-Weyl parameter must be nonzero")]
    ZeroTorusParameter,
    #[error("matrix determinant is {0}, expected 1")]
    NotDeterminantOne(String),
    #[error("letters are not in strictly decreasing root order at position {position}")]
    NotOrderedDescending { position: usize },
    #[error("letter {position} is not a positive root letter")]
    NotPositiveLetter { position: usize },
    #[error("parameter {value} at letter {position} is not integral")]
    NonIntegralParameter { position: usize, value: String },
    #[error("rewriting did not reach cell form within {budget} moves: {reason}; sub-word `{subword}`")]
    MoveBudgetExceeded { budget: usize, reason: String, subword: String },
    #[error("modules in a collection must share the Cartan matrix and depth bound")]
    IncompatibleCollection,
    #[error("syntax error at {line}:{column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("zero denominator at {line}:{column}")]
    ZeroDenominator { line: usize, column: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare => "NotSquare",
            Error::DiagonalNotTwo { .. } => "DiagonalNotTwo",
            Error::PositiveOffDiagonal { .. } => "PositiveOffDiagonal",
            Error::ZeroSymmetryViolated { .. } => "ZeroSymmetryViolated",
            Error::NotSymmetrizable => "NotSymmetrizable",
            Error::Decomposable => "Decomposable",
            Error::ArmTooShort(_) => "ArmTooShort",
            Error::DegenerateCartan => "DegenerateCartan",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotARoot(_) => "NotARoot",
            Error::NotARealRoot(_) => "NotARealRoot",
            Error::NotDominant(_) => "NotDominant",
            Error::ResourceBudgetExceeded { .. } => "ResourceBudgetExceeded",
            Error::DepthOutOfRange { .. } => "DepthOutOfRange",
            Error::TruncationOverflow { .. } => "TruncationOverflow",
            Error::ZeroTorusParameter => "ZeroTorusParameter",
            Error::NotDeterminantOne(_) => "NotDeterminantOne",
            Error::NotOrderedDescending { .. } => "NotOrderedDescending",
            Error::NotPositiveLetter { .. } => "NotPositiveLetter",
            Error::NonIntegralParameter { .. } => "NonIntegralParameter",
            Error::MoveBudgetExceeded { .. } => "MoveBudgetExceeded",
            Error::IncompatibleCollection => "IncompatibleCollection",
            Error::Syntax { .. } => "SyntaxError",
            Error::ZeroDenominator { .. } => "ZeroDenominator",
        }
    }
}
