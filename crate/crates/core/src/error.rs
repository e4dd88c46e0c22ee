use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library.
///
/// The stable identifier of each case is [`Error::name`]; the CLI prints it
/// on stderr so scripts can match on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field contexts differ: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("context is not enumerable")]
    NotEnumerable,
    #[error("zero vector cannot span a point")]
    ZeroVector,
    #[error("scalar loop requires a nonzero scalar")]
    ZeroScalar,
    #[error("points are not distinct: {0}")]
    PointsNotDistinct(String),
    #[error("vector does not span the source of the arrow")]
    VectorNotInSource,
    #[error("arrows are not composable: {0}")]
    NotComposable(String),
    #[error("cross ratio undefined (first = fourth or second = third entry)")]
    UndefinedCrossRatio,
    #[error("malformed composition table: {0}")]
    MalformedTable(String),
    #[error("triple is not distinct: {0}")]
    TriplesNotDistinct(String),
    #[error("lines live over different fields")]
    FieldMismatch,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("not a projectivity: {0}")]
    NotAProjectivity(String),
    #[error("weights do not sum to one")]
    WeightsNotAffine,
    #[error("puncture point appears among the operands")]
    PunctureInTerms,
    #[error("zero point equals the puncture")]
    ZeroEqualsPuncture,
    #[error("triples have different base points")]
    BaseMismatch,
    #[error("map is not affine: {0}")]
    NotAffine(String),
    #[error("chart is not a bijection: {0}")]
    ChartDegenerate(String),
    #[error("unknown point: {0}")]
    UnknownPoint(String),
    #[error("parse error: {0}")]
    ParseError(String),
}

impl Error {
    /// Stable machine-readable name of the error case.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::BoundExceeded(_) => "BoundExceeded",
            Error::DivisionByZero => "DivisionByZero",
            Error::ContextMismatch(_, _) => "ContextMismatch",
            Error::NotEnumerable => "NotEnumerable",
            Error::ZeroVector => "ZeroVector",
            Error::ZeroScalar => "ZeroScalar",
            Error::PointsNotDistinct(_) => "PointsNotDistinct",
            Error::VectorNotInSource => "VectorNotInSource",
            Error::NotComposable(_) => "NotComposable",
            Error::UndefinedCrossRatio => "UndefinedCrossRatio",
            Error::MalformedTable(_) => "MalformedTable",
            Error::TriplesNotDistinct(_) => "TriplesNotDistinct",
            Error::FieldMismatch => "FieldMismatch",
            Error::NoSolution(_) => "NoSolution",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::SingularMatrix => "SingularMatrix",
            Error::NotAProjectivity(_) => "NotAProjectivity",
            Error::WeightsNotAffine => "WeightsNotAffine",
            Error::PunctureInTerms => "PunctureInTerms",
            Error::ZeroEqualsPuncture => "ZeroEqualsPuncture",
            Error::BaseMismatch => "BaseMismatch",
            Error::NotAffine(_) => "NotAffine",
            Error::ChartDegenerate(_) => "ChartDegenerate",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::ParseError(_) => "ParseError",
        }
    }
}
