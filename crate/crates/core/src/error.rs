use thiserror::Error;

use crate::matrix::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {len} entries, expected {n}x{n}")]
    BadShape { n: usize, len: usize },

    #[error("matrix must have at least one row")]
    Empty,

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("entry ({row}, {col}) has imaginary part {imag:e} but the field is real")]
    NotReal { row: usize, col: usize, imag: f64 },

    #[error("not Hermitian: entries ({row}, {col}) and ({col}, {row}) differ by {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("diagonal entry {index} is {value} (expected 1)")]
    DiagonalNotUnit { index: usize, value: f64 },

    #[error("not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPsd { eigenvalue: f64 },

    #[error("entry ({row}, {col}) has modulus {modulus} > 1")]
    EntryBoundViolated { row: usize, col: usize, modulus: f64 },

    #[error("invalid tolerance {name} = {value} (must be finite and > 0)")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("Gram reconstruction error {error:e} exceeds tolerance")]
    ReconstructionFailed { error: f64 },

    #[error("Gram factor has rank 0")]
    DegenerateRank,

    #[error("invalid Gram factor: {0}")]
    InvalidGramFactor(String),

    #[error("matrix is extreme; no witness exists")]
    IsExtreme,

    #[error("perturbation is not orthogonal to projector {index}: diagonal entry {value:e}")]
    WitnessNotOrthogonal { index: usize, value: f64 },

    #[error("perturbation vanished numerically")]
    WitnessDegenerate,

    #[error("witness validation failed: smallest eigenvalue {eigenvalue:e}")]
    ValidationFailed { eigenvalue: f64 },

    #[error("size {n} too small for rank {rank} (need at least {required})")]
    SizeTooSmall { n: usize, rank: usize, required: usize },

    #[error("invalid construction: {0}")]
    InvalidSpec(String),

    #[error("generator inconsistent at ({row}, {col}): {reason}")]
    GeneratorInconsistent { row: usize, col: usize, reason: String },
}

impl Error {
    /// Stable snake_case name of the violated condition.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadShape { .. } => "bad_shape",
            Error::Empty => "empty",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::NotReal { .. } => "not_real",
            Error::NotHermitian { .. } => "not_hermitian",
            Error::DiagonalNotUnit { .. } => "diagonal_not_unit",
            Error::NotPsd { .. } => "not_psd",
            Error::EntryBoundViolated { .. } => "entry_bound_violated",
            Error::InvalidTolerance { .. } => "invalid_tolerance",
            Error::NoConvergence => "no_convergence",
            Error::ReconstructionFailed { .. } => "reconstruction_failed",
            Error::DegenerateRank => "degenerate_rank",
            Error::InvalidGramFactor(_) => "invalid_gram_factor",
            Error::IsExtreme => "is_extreme",
            Error::WitnessNotOrthogonal { .. } => "witness_not_orthogonal",
            Error::WitnessDegenerate => "witness_degenerate",
            Error::ValidationFailed { .. } => "validation_failed",
            Error::SizeTooSmall { .. } => "size_too_small",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::GeneratorInconsistent { .. } => "generator_inconsistent",
        }
    }

    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence
                | Error::DegenerateRank
                | Error::ReconstructionFailed { .. }
                | Error::WitnessNotOrthogonal { .. }
                | Error::WitnessDegenerate
                | Error::ValidationFailed { .. }
        )
    }
}
