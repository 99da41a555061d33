use thiserror::Error;

/// Errors raised by the kernel. Variant names double as the stable error
/// identifiers printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("modulus polynomial is reducible: {0}")]
    InvalidModulus(String),
    #[error("substitution does not define an endomorphism: {0}")]
    InvalidSubstitution(String),
    #[error("negative power of a non-invertible endomorphism")]
    NegativePowerOfNonInvertibleEndo,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operation requires the endomorphism to be an automorphism")]
    RequiresAutomorphism,
    #[error("both arguments are zero")]
    BothZero,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("series has zero constant term and is not invertible")]
    NonInvertibleSeries,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("fraction does not expand to a power series")]
    NotASeries,
    #[error("insufficient seed: need {needed} coefficients, got {got}")]
    InsufficientSeed { needed: usize, got: usize },
    #[error("no recurrence found up to order {0}")]
    NoRecurrenceFound(usize),
    #[error("guess failed at the available precision")]
    GuessFailed,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("representations are not similar: {0}")]
    NotSimilar(String),
    #[error("regularity characterizations disagree: {0}")]
    CharacterizationMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl Error {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::InvalidSubstitution(_) => "InvalidSubstitution",
            Error::NegativePowerOfNonInvertibleEndo => "NegativePowerOfNonInvertibleEndo",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::RequiresAutomorphism => "RequiresAutomorphism",
            Error::BothZero => "BothZero",
            Error::ZeroInverse => "ZeroInverse",
            Error::NonInvertibleSeries => "NonInvertibleSeries",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::NotASeries => "NotASeries",
            Error::InsufficientSeed { .. } => "InsufficientSeed",
            Error::NoRecurrenceFound(_) => "NoRecurrenceFound",
            Error::GuessFailed => "GuessFailed",
            Error::CertificationFailed(_) => "CertificationFailed",
            Error::NotSimilar(_) => "NotSimilar",
            Error::CharacterizationMismatch(_) => "CharacterizationMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
        }
    }

    /// Whether the error stems from malformed input rather than from the
    /// mathematics of a well-formed request.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::UnsupportedField(_) | Error::DimensionMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
