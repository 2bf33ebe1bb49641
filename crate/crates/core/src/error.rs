use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
///
/// The variants are grouped roughly by the layer that raises them; callers
/// that need coarse buckets (for example the CLI exit codes) can use
/// [`Error::is_unsupported`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("extension modulus must have degree at least 2")]
    ModulusDegree,
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducible,
    #[error("field towers deeper than 2 are not supported")]
    TowerTooDeep,
    #[error("value {0} cannot be represented in this field")]
    NotRepresentable(String),
    #[error("malformed element: {0}")]
    MalformedElement(String),

    // linalg
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    SizeMismatch(String),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("matrix is singular")]
    Singular,

    // factor
    #[error("degree {degree} exceeds the supported bound {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("operation not supported over this field: {0}")]
    UnsupportedField(String),

    // galois
    #[error("polynomial is not a quartic")]
    NotQuartic,
    #[error("characteristic 2 is not supported by the quartic classifier")]
    Char2Unsupported,
    #[error("subspace dimension {k} outside 1..={max}")]
    BadDimension { k: usize, max: usize },

    // invariant
    #[error("compound order {k} outside 1..={n}")]
    BadK { k: usize, n: usize },
    #[error("no admissible shift found after {tries} candidates; retry over an extension field")]
    ShiftExhausted { tries: usize },
    #[error("characteristic polynomial is not squarefree")]
    NotSquarefree,
    #[error("vector is zero")]
    ZeroVector,
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("polynomial is not an irreducible factor of the characteristic polynomial")]
    NotAFactor,

    // st
    #[error("characteristic polynomial does not split over the chosen field")]
    DoesNotSplit,
    #[error("matrix has repeated eigenvalues")]
    RepeatedEigenvalues,

    // verdict
    #[error("the two diagonal blocks have equal characteristic polynomials")]
    ChiEqual,
    #[error("exponent must be at least 1")]
    BadExponent,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Errors that mean "valid input, but outside what this build can decide".
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::DegreeTooLarge { .. }
                | Error::ShiftExhausted { .. }
                | Error::DoesNotSplit
                | Error::UnsupportedField(_)
                | Error::TowerTooDeep
                | Error::Char2Unsupported
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
