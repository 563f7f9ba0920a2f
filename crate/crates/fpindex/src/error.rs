use thiserror::Error;

/// Every failure the library reports. Variants carry enough context for a
/// machine-readable error object in the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution image has a nonzero constant term")]
    NonLocalSubstitution,
    #[error("series has zero constant term and is not a unit")]
    NotAUnit,
    #[error("not divisible at working precision: {0}")]
    NotDivisible(String),
    #[error("germ is the identity up to precision")]
    IdentityGerm,
    #[error("germ does not fix the origin")]
    OriginNotFixed,
    #[error("h1 and h2 share a nonunit factor (quotient dimension did not stabilize)")]
    NotCoprime,
    #[error("no shear in the deterministic sequence achieved regularity")]
    ShearExhausted,
    #[error("factor {0} is singular at the origin and has no supplied parametrization")]
    UnsupportedSingularBranch(String),
    #[error("result changed between precision {low} and {high}")]
    PrecisionExhausted { low: u32, high: u32 },
    #[error("linear part at the origin is singular")]
    NotInvertible,
    #[error("z1 = 0 is not a fixed curve of the germ")]
    NotACurveFixingGerm,
    #[error("decomposition unavailable: {0}")]
    DecompositionUnavailable(String),
    #[error("missing index data: {0}")]
    MissingIndexData(String),
    #[error("model contains a periodic curve of type I: {0}")]
    TypeICurvePresent(String),
    #[error("algebraic stability is not asserted for this model")]
    NotAlgebraicallyStable,
    #[error("point is not an isolated solution: {0}")]
    NonIsolated(String),
    #[error("values from different quadratic fields were combined")]
    FieldMismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

impl Error {
    /// Stable identifier used in machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonLocalSubstitution => "NonLocalSubstitution",
            Error::NotAUnit => "NotAUnit",
            Error::NotDivisible(_) => "NotDivisible",
            Error::IdentityGerm => "IdentityGerm",
            Error::OriginNotFixed => "OriginNotFixed",
            Error::NotCoprime => "NotCoprime",
            Error::ShearExhausted => "ShearExhausted",
            Error::UnsupportedSingularBranch(_) => "UnsupportedSingularBranch",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::NotInvertible => "NotInvertible",
            Error::NotACurveFixingGerm => "NotACurveFixingGerm",
            Error::DecompositionUnavailable(_) => "DecompositionUnavailable",
            Error::MissingIndexData(_) => "MissingIndexData",
            Error::TypeICurvePresent(_) => "TypeICurvePresent",
            Error::NotAlgebraicallyStable => "NotAlgebraicallyStable",
            Error::NonIsolated(_) => "NonIsolated",
            Error::FieldMismatch => "FieldMismatch",
            Error::Parse { .. } => "ParseError",
            Error::Precondition(_) => "Precondition",
            Error::InvalidScenario(_) => "InvalidScenario",
        }
    }

    /// Input problems (exit code 2) as opposed to domain failures (exit code 1).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidScenario(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
