use thiserror::Error;

/// Errors raised by ring arithmetic, generators and censuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is zero")]
    ZeroElement,
    #[error("element is a unit")]
    IsUnit,
    #[error("elements are not comaximal (gcd {gcd} is not a unit)")]
    NotComaximal { gcd: String },
    #[error("operation not supported over {ring}")]
    UnsupportedRing { ring: String },
    #[error("factorization overflow: cofactor {cofactor} could not be resolved")]
    FactorizationOverflow { cofactor: String },
    #[error("enumeration of {required} elements exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("divisibility outside the truncation soundness window: {0}")]
    OutsideSoundnessWindow(String),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("wrong ring shape: {0}")]
    WrongRingShape(String),
    #[error("{modulus} and {base} are not coprime")]
    NotCoprime { modulus: String, base: String },
    #[error("invalid prime list: {0}")]
    InvalidPrimeList(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("element is not positive")]
    NotPositive,
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by malformed caller input rather than by the
    /// mathematics or by resource limits.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidDescriptor(_)
                | Error::InvalidElement(_)
                | Error::InvalidParameters(_)
                | Error::InvalidPrimeList(_)
                | Error::NotCoprime { .. }
                | Error::RingMismatch { .. }
                | Error::WrongRingShape(_)
                | Error::UnsupportedRing { .. }
                | Error::ZeroElement
                | Error::IsUnit
                | Error::NotPositive
                | Error::ZeroLeadingCoefficient
                | Error::OutsideSoundnessWindow(_)
                | Error::NotComaximal { .. }
        )
    }
}
