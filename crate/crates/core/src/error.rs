//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures raised by the library.
///
/// Variants fall in two groups: domain errors (the mathematics rejects the
/// input) and input errors (shape or syntax problems). [`Error::is_domain`]
/// tells them apart; the CLI maps them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero element has no inverse")]
    ZeroElement,

    #[error("modulus {0} is not irreducible")]
    InvalidModulus(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("scalar must be nonzero")]
    ZeroScalar,

    #[error("polynomial {0} is not monic")]
    NotMonic(String),

    #[error("polynomial {0} is reducible over Q")]
    Reducible(String),

    #[error("irreducibility of {0} cannot be certified without a hint")]
    NeedsHint(String),

    #[error("unfactored remainder {remainder}; supply an irreducibility hint")]
    Unfactored { remainder: String },

    #[error("epsilon = 0 convention unavailable for {poly}: {reason}")]
    ConventionUnavailable { poly: String, reason: String },

    #[error("the zero multiplicity function describes an Abelian algebra")]
    ZeroMultiplicity,

    #[error("operator is zero")]
    ZeroOperator,

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("invalid invariant subspace data: {0}")]
    InvalidSubspaceSpec(String),

    #[error("automorphisms and derivations of the Heisenberg algebra are not covered")]
    Heisenberg,

    #[error("algebra is decomposable (W has dimension {w_dim})")]
    Decomposable { w_dim: usize },

    #[error("algebra is indecomposable")]
    Indecomposable,

    #[error("{0} is not a dilation symmetry")]
    NotDilationSymmetry(String),

    #[error("oracle system has {unknowns} unknowns, cap is {cap}")]
    CapExceeded { unknowns: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroElement => "zero_element",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSquare { .. } => "not_square",
            Error::Singular => "singular",
            Error::ZeroScalar => "zero_scalar",
            Error::NotMonic(_) => "not_monic",
            Error::Reducible(_) => "reducible",
            Error::NeedsHint(_) => "needs_hint",
            Error::Unfactored { .. } => "unfactored",
            Error::ConventionUnavailable { .. } => "epsilon_unavailable",
            Error::ZeroMultiplicity => "zero_multiplicity",
            Error::ZeroOperator => "zero_operator",
            Error::DependentVectors => "dependent_vectors",
            Error::InvalidSubspaceSpec(_) => "invalid_subspace_spec",
            Error::Heisenberg => "heisenberg_deferred",
            Error::Decomposable { .. } => "decomposable",
            Error::Indecomposable => "indecomposable",
            Error::NotDilationSymmetry(_) => "not_dilation_symmetry",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Parse(_) => "parse",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }

    /// True for errors where the input was well formed but mathematically
    /// rejected.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_)
                | Error::DimensionMismatch { .. }
                | Error::NotSquare { .. }
                | Error::InvalidArgument(_)
        )
    }

    pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
