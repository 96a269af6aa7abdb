//! Extremality test for finite correlation matrices.
//!
//! Let `eta_1..eta_n` be a Gram factor of `C` in `K = F^r`, `r = rank C`.
//! `C` is an extreme point of the correlation matrices exactly when the
//! rank-one projectors `|eta_k><eta_k|` span the real space of self-adjoint
//! operators on `K`, whose dimension is `r^2` over the complex field and
//! `r(r+1)/2` over the real field. The ambient space is built on the rank,
//! not on the matrix size.
//!
//! Projectors are compared through an isometric coordinate map: diagonal
//! entries as-is, then `sqrt(2) * Re A[i][j]` for `i < j`, then (complex
//! field only) `sqrt(2) * Im A[i][j]` for `i < j`, so that the Euclidean dot
//! product of coordinates equals `Re tr(A B)`.

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, SVD};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::{gram_factor_with_spectrum, GramFactor};
use crate::matrix::{near_cutoff, numerical_rank, Complex64, CorrelationMatrix, Field, Tolerances};
use crate::witness::{find_witness, Witness};

const SVD_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Extreme,
    NotExtreme,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Extreme => "extreme",
            Verdict::NotExtreme => "not_extreme",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Coordinates of a Hermitian `r x r` operator in the isometric basis.
pub fn vectorize(field: Field, a: &DMatrix<Complex64>) -> Vec<f64> {
    let r = a.nrows();
    let mut out = Vec::with_capacity(field.ambient_dim(r));
    out.extend((0..r).map(|i| a[(i, i)].re));
    for i in 0..r {
        for j in i + 1..r {
            out.push(SQRT_2 * a[(i, j)].re);
        }
    }
    if field == Field::Complex {
        for i in 0..r {
            for j in i + 1..r {
                out.push(SQRT_2 * a[(i, j)].im);
            }
        }
    }
    out
}

/// Inverse of [`vectorize`].
pub fn devectorize(field: Field, r: usize, coords: &[f64]) -> Result<DMatrix<Complex64>> {
    if coords.len() != field.ambient_dim(r) {
        return Err(Error::BadShape {
            n: r,
            len: coords.len(),
        });
    }
    let mut a = DMatrix::zeros(r, r);
    for i in 0..r {
        a[(i, i)] = Complex64::new(coords[i], 0.0);
    }
    let pairs = r * (r - 1) / 2;
    let mut k = 0;
    for i in 0..r {
        for j in i + 1..r {
            let re = coords[r + k] / SQRT_2;
            let im = match field {
                Field::Real => 0.0,
                Field::Complex => coords[r + pairs + k] / SQRT_2,
            };
            a[(i, j)] = Complex64::new(re, im);
            a[(j, i)] = Complex64::new(re, -im);
            k += 1;
        }
    }
    Ok(a)
}

fn projector_coords(field: Field, eta: &[Complex64]) -> Vec<f64> {
    let r = eta.len();
    let mut out = Vec::with_capacity(field.ambient_dim(r));
    out.extend(eta.iter().map(|z| z.norm_sqr()));
    // |eta><eta| has entry eta_i * conj(eta_j) at (i, j)
    let off: Vec<Complex64> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .map(|(i, j)| eta[i] * eta[j].conj())
        .collect();
    out.extend(off.iter().map(|z| SQRT_2 * z.re));
    if field == Field::Complex {
        out.extend(off.iter().map(|z| SQRT_2 * z.im));
    }
    out
}

/// The vectorized projectors `|eta_k><eta_k|` and the dimension of their
/// real span.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSpan {
    pub field: Field,
    pub r: usize,
    pub n: usize,
    /// One coordinate vector per index, each of length `ambient_dim()`.
    pub vecs: Vec<Vec<f64>>,
    pub span_dim: usize,
    /// Singular values of the `n x ambient_dim` arrangement, descending.
    pub singular_values: Vec<f64>,
}

impl ProjectorSpan {
    pub fn ambient_dim(&self) -> usize {
        self.field.ambient_dim(self.r)
    }

    pub fn is_full(&self) -> bool {
        self.span_dim == self.ambient_dim()
    }

    /// Row-per-projector arrangement.
    pub fn arrangement(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.ambient_dim(), |k, c| self.vecs[k][c])
    }
}

pub(crate) fn svd(m: DMatrix<f64>, compute_v: bool) -> Result<SVD<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    SVD::try_new(m, false, compute_v, f64::EPSILON, SVD_MAX_ITERATIONS).ok_or(Error::NoConvergence)
}

pub fn projector_span(g: &GramFactor, tol: &Tolerances) -> Result<ProjectorSpan> {
    let field = g.field();
    let vecs: Vec<Vec<f64>> = (0..g.n()).map(|k| projector_coords(field, &g.vector(k))).collect();
    let span = ProjectorSpan {
        field,
        r: g.r(),
        n: g.n(),
        vecs,
        span_dim: 0,
        singular_values: Vec::new(),
    };
    let mut singular_values: Vec<f64> = svd(span.arrangement(), false)?
        .singular_values
        .iter()
        .copied()
        .collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let span_dim = numerical_rank(&singular_values, tol.rank);
    Ok(ProjectorSpan {
        span_dim,
        singular_values,
        ..span
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalityReport {
    pub field: Field,
    pub n: usize,
    pub rank: usize,
    pub span_dim: usize,
    pub ambient_dim: usize,
    pub verdict: Verdict,
    /// Some eigenvalue or span singular value lies within a factor of ten
    /// of the rank cutoff.
    pub marginal: bool,
    /// Present exactly when the verdict is `NotExtreme`.
    pub witness: Option<Witness>,
}

/// Decides extremality over the matrix's own field and, if not extreme,
/// attaches a verified convex decomposition.
pub fn check_extreme(c: &CorrelationMatrix, tol: &Tolerances) -> Result<ExtremalityReport> {
    tol.validate()?;
    let (gram, spectrum) = gram_factor_with_spectrum(c, tol)?;
    let span = projector_span(&gram, tol)?;
    let verdict = if span.is_full() {
        Verdict::Extreme
    } else {
        Verdict::NotExtreme
    };
    let witness = match verdict {
        Verdict::Extreme => None,
        Verdict::NotExtreme => Some(find_witness(c, &gram, &span, tol)?),
    };
    Ok(ExtremalityReport {
        field: c.field(),
        n: c.n(),
        rank: gram.r(),
        span_dim: span.span_dim,
        ambient_dim: span.ambient_dim(),
        verdict,
        marginal: near_cutoff(&spectrum, tol.rank) || near_cutoff(&span.singular_values, tol.rank),
        witness,
    })
}
