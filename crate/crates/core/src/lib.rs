//! Extreme points of the set of real and complex correlation matrices.
//!
//! A correlation matrix `C` (Hermitian, positive semidefinite, unit diagonal)
//! factors as `C[n][m] = <eta_n | eta_m>` for unit vectors spanning
//! `K = F^r`, `r = rank C`. It is extreme exactly when the projectors
//! `|eta_n><eta_n|` span all self-adjoint operators on `K`.
//!
//! * [`matrix`]: field-tagged Hermitian matrices, validation, norms, eigen.
//! * [`gram`]: Gram factorization and rank.
//! * [`extremality`]: the span test and [`ExtremalityReport`].
//! * [`witness`]: explicit decompositions `C = (C - eps B)/2 + (C + eps B)/2`.
//! * [`constructors`]: extreme points of every admissible rank and seeded corpora.
//! * [`infinite`]: entry generators for infinite matrices and truncation scans.

pub mod constructors;
pub mod error;
pub mod extremality;
pub mod gram;
pub mod infinite;
pub mod matrix;
pub mod witness;

pub use constructors::{
    all_ones, identity, li_tam_complex, li_tam_real, proposition1, random_gram, Construction, ConstructionKind,
    ConstructionSpec,
};
pub use error::{Error, Result};
pub use extremality::{check_extreme, projector_span, ExtremalityReport, ProjectorSpan, Verdict};
pub use gram::{gram_factor, gram_reconstruct, rank, GramFactor};
pub use infinite::{truncate, truncation_scan, MatrixGenerator, TruncationTrace};
pub use matrix::{
    eig_selfadjoint, operator_norm, trace_norm, validate_correlation, Complex64, CorrelationMatrix, EigenDecomposition,
    Field, HermitianMatrix, Tolerances,
};
pub use witness::{find_witness, Witness};
