use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("the ring is zero (1 lies in the relation ideal)")]
    ZeroRing,
    #[error("element is nilpotent: {0}")]
    Nilpotent(String),
    #[error("elements do not generate the unit ideal")]
    NotUnitIdeal,
    #[error("ideal is not proper")]
    ImproperIdeal,
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("weights are not admissible: {0}")]
    InadmissibleWeights(String),
    #[error("not an A-valuation: {0}")]
    NotAValuation(String),
    #[error("level {level} lies below the convex level {cgamma}")]
    LevelBelowConvex { level: usize, cgamma: String },
    #[error("valuation is not in Val: {0}")]
    NotInVal(String),
    #[error("denominator lies in the kernel of the valuation")]
    DenominatorInKernel,
    #[error("module does not contain 1: {0}")]
    ModuleWithoutOne(String),
    #[error("inverse image module is not invertible: {0}")]
    NotInvertible(String),
    #[error("cannot lift element to the base ring: {0}")]
    LiftFailure(String),
    #[error("restrictions disagree on the overlap of domains {i} and {j}")]
    RestrictionMismatch { i: usize, j: usize },
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable identifier used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Malformed(_) => "malformed",
            Error::ContextMismatch => "context_mismatch",
            Error::ZeroRing => "zero_ring",
            Error::Nilpotent(_) => "nilpotent",
            Error::NotUnitIdeal => "not_unit_ideal",
            Error::ImproperIdeal => "improper_ideal",
            Error::InvalidHom(_) => "invalid_hom",
            Error::InadmissibleWeights(_) => "inadmissible_weights",
            Error::NotAValuation(_) => "not_a_valuation",
            Error::LevelBelowConvex { .. } => "level_below_convex",
            Error::NotInVal(_) => "not_in_val",
            Error::DenominatorInKernel => "denominator_in_kernel",
            Error::ModuleWithoutOne(_) => "module_without_one",
            Error::NotInvertible(_) => "not_invertible",
            Error::LiftFailure(_) => "lift_failure",
            Error::RestrictionMismatch { .. } => "restriction_mismatch",
            Error::Unsupported(_) => "unsupported",
        }
    }

    /// Whether the error stems from malformed input rather than mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Malformed(_) | Error::ContextMismatch)
    }
}
