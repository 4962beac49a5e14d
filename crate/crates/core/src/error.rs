use thiserror::Error;

/// Errors produced by the exact kernels.
///
/// Most variants signal a property of the input rather than a bug:
/// `PrecisionExhausted` asks the caller to raise the working precision and
/// `NoRoot` means the finite coefficient field is too small for the request.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("no {l}-th root of {value} in F_{q}")]
    NoRoot { l: u64, value: String, q: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("series fields differ")]
    FieldMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arc lies in the branch locus ({0})")]
    ArcInBranchLocus(String),

    #[error("arcs do not separate within the working precision (intersection infinite)")]
    Infinite,

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("inconsistent representation data: {0}")]
    InconsistentRepresentation(String),
}

impl Error {
    pub(crate) fn precision(what: impl Into<String>) -> Self {
        Error::PrecisionExhausted(what.into())
    }

    pub(crate) fn precondition(what: impl Into<String>) -> Self {
        Error::Precondition(what.into())
    }

    /// Short machine-readable tag, used by experiment incident logs.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::DivisionByZero => "division_by_zero",
            Error::NoRoot { .. } => "no_root",
            Error::PrecisionExhausted(_) => "precision_exhausted",
            Error::FieldMismatch => "field_mismatch",
            Error::Parse(_) => "parse",
            Error::Precondition(_) => "precondition",
            Error::ArcInBranchLocus(_) => "arc_in_branch_locus",
            Error::Infinite => "infinite",
            Error::InvalidCover(_) => "invalid_cover",
            Error::InconsistentRepresentation(_) => "inconsistent_representation",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
