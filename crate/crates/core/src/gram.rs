//! Gram factorization: a correlation matrix as the inner products of unit
//! vectors in `F^r`, where `r` is the matrix rank.
//!
//! Inner products are conjugate-linear in the first argument and linear in
//! the second, so `C[n][m] = <eta_n | eta_m> = sum_j conj(eta_n[j]) eta_m[j]`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{
    eigen_unchecked, numerical_rank, validate_correlation, Complex64, CorrelationMatrix, Field, HermitianMatrix,
    Tolerances,
};

/// `<a | b>`, conjugate-linear in `a`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `n` unit vectors in `F^r` that span `F^r`. Stored as the columns of an
/// `r x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GramFactor {
    field: Field,
    vectors: DMatrix<Complex64>,
}

impl GramFactor {
    /// Checks unit norms, admissibility over `field`, and that the vectors
    /// span `F^r`.
    pub fn from_vectors(field: Field, vectors: &[Vec<Complex64>], tol: &Tolerances) -> Result<Self> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::InvalidGramFactor("no vectors".into()));
        }
        let r = vectors[0].len();
        if r == 0 {
            return Err(Error::DegenerateRank);
        }
        if let Some(k) = vectors.iter().position(|v| v.len() != r) {
            return Err(Error::InvalidGramFactor(format!(
                "vector {k} has length {}, expected {r}",
                vectors[k].len()
            )));
        }
        let matrix = DMatrix::from_fn(r, n, |i, k| vectors[k][i]);
        Self::from_matrix(field, matrix, tol)
    }

    /// Same as [`GramFactor::from_vectors`], columns are the vectors.
    pub fn from_matrix(field: Field, vectors: DMatrix<Complex64>, tol: &Tolerances) -> Result<Self> {
        let (r, n) = vectors.shape();
        if n == 0 {
            return Err(Error::InvalidGramFactor("no vectors".into()));
        }
        if r == 0 {
            return Err(Error::DegenerateRank);
        }
        for k in 0..n {
            let col = vectors.column(k);
            if col.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::InvalidGramFactor(format!("vector {k} is not finite")));
            }
            if field == Field::Real && col.iter().any(|z| z.im.abs() > tol.herm) {
                return Err(Error::InvalidGramFactor(format!(
                    "vector {k} has complex entries but the field is real"
                )));
            }
            let norm = col.norm();
            if (norm - 1.0).abs() > tol.diag {
                return Err(Error::InvalidGramFactor(format!("vector {k} has norm {norm}")));
            }
        }
        let spanned = numerical_rank(vectors.singular_values().as_slice(), tol.rank);
        if spanned != r {
            return Err(Error::InvalidGramFactor(format!(
                "vectors span a {spanned}-dimensional subspace of F^{r}"
            )));
        }
        Ok(GramFactor { field, vectors })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the space the vectors live in (the rank).
    pub fn r(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn n(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k).iter().copied().collect()
    }

    /// `r x n` matrix with the vectors as columns.
    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    /// Matrix of pairwise inner products, without validation.
    pub fn gram_matrix(&self) -> HermitianMatrix {
        let g = self.vectors.adjoint() * &self.vectors;
        HermitianMatrix::from_matrix(self.field, g).expect("n x n by construction")
    }
}

pub fn gram_factor(c: &CorrelationMatrix, tol: &Tolerances) -> Result<GramFactor> {
    gram_factor_with_spectrum(c, tol).map(|(g, _)| g)
}

/// Gram factor plus the descending eigenvalues it was built from.
pub(crate) fn gram_factor_with_spectrum(c: &CorrelationMatrix, tol: &Tolerances) -> Result<(GramFactor, Vec<f64>)> {
    let eig = eigen_unchecked(c.matrix())?;
    let r = numerical_rank(&eig.values, tol.rank);
    if r == 0 {
        return Err(Error::DegenerateRank);
    }
    let n = c.n();
    // column k of sqrt(Lambda_r) U_r*
    let mut vectors = DMatrix::from_fn(r, n, |j, k| eig.vectors[(k, j)].conj() * eig.values[j].sqrt());
    for mut col in vectors.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col.unscale_mut(norm);
        }
    }
    if c.field() == Field::Real {
        vectors.iter_mut().for_each(|z| z.im = 0.0);
    }
    let factor = GramFactor {
        field: c.field(),
        vectors,
    };
    let error = factor.gram_matrix().max_abs_diff(c.matrix())?;
    if error > tol.recon {
        return Err(Error::ReconstructionFailed { error });
    }
    Ok((factor, eig.values))
}

pub fn gram_reconstruct(g: &GramFactor, tol: &Tolerances) -> Result<CorrelationMatrix> {
    validate_correlation(&g.gram_matrix(), tol)
}

/// Number of eigenvalues strictly above `tol.rank * lambda_max`; equals the
/// dimension of the span of any Gram factor.
pub fn rank(c: &CorrelationMatrix, tol: &Tolerances) -> Result<usize> {
    let eig = eigen_unchecked(c.matrix())?;
    match numerical_rank(&eig.values, tol.rank) {
        0 => Err(Error::DegenerateRank),
        r => Ok(r),
    }
}
