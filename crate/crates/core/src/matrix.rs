//! Field-tagged dense Hermitian matrices, correlation-matrix validation and
//! the self-adjoint eigendecomposition everything else is built on.
//!
//! Entries are always stored as `Complex64`. The [`Field`] tag decides which
//! scalars are admissible and, downstream, which real vector space of
//! self-adjoint operators the extremality test works in. Over [`Field::Real`]
//! every imaginary part must vanish and eigenvectors are computed with a real
//! symmetric solver so that Gram vectors stay in `R^r`.

use std::fmt;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Iteration budget per matrix dimension for the symmetric QR solver.
const EIG_ITERATIONS_PER_DIM: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Real dimension of the self-adjoint operators on `F^r`.
    pub fn ambient_dim(self, r: usize) -> usize {
        match self {
            Field::Real => r * (r + 1) / 2,
            Field::Complex => r * r,
        }
    }

    /// Whether a rank-`r` correlation matrix of size `n` can be extreme at all.
    pub fn rank_bound_holds(self, r: usize, n: usize) -> bool {
        match self {
            Field::Real => r * r + r <= 2 * n,
            Field::Complex => r * r <= n,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(format!("unknown field `{other}` (expected real or complex)")),
        }
    }
}

/// Numerical tolerances. `rank` is relative to the largest eigenvalue or
/// singular value; all others are absolute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub herm: f64,
    pub diag: f64,
    pub psd: f64,
    pub entry: f64,
    pub rank: f64,
    pub recon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-10,
            diag: 1e-10,
            psd: 1e-8,
            entry: 1e-8,
            rank: 1e-9,
            recon: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("herm", self.herm),
            ("diag", self.diag),
            ("psd", self.psd),
            ("entry", self.entry),
            ("rank", self.rank),
            ("recon", self.recon),
        ];
        for (name, value) in named {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }

    /// Absolute cutoff for a descending spectrum: values strictly above it count.
    pub fn rank_cutoff(&self, largest: f64) -> f64 {
        self.rank * largest.max(0.0)
    }
}

/// Number of values strictly above `rel * max(values)`.
pub(crate) fn numerical_rank(values: &[f64], rel: f64) -> usize {
    let largest = values.iter().cloned().fold(0.0_f64, f64::max);
    if largest <= 0.0 {
        return 0;
    }
    let cutoff = rel * largest;
    values.iter().filter(|&&v| v > cutoff).count()
}

/// Whether any value sits within a factor of ten of the relative cutoff.
pub(crate) fn near_cutoff(values: &[f64], rel: f64) -> bool {
    let largest = values.iter().cloned().fold(0.0_f64, f64::max);
    if largest <= 0.0 {
        return false;
    }
    let cutoff = rel * largest;
    values
        .iter()
        .any(|&v| v.abs() > cutoff / 10.0 && v.abs() < cutoff * 10.0)
}

/// Dense square matrix over a declared field. Hermitian symmetry is checked by
/// [`HermitianMatrix::check_hermitian`] and [`validate_correlation`], not on
/// construction, so that invalid input can be reported precisely.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    field: Field,
    data: DMatrix<Complex64>,
}

impl HermitianMatrix {
    pub fn from_matrix(field: Field, data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() == 0 {
            return Err(Error::Empty);
        }
        if data.nrows() != data.ncols() {
            return Err(Error::BadShape {
                n: data.nrows(),
                len: data.len(),
            });
        }
        Ok(HermitianMatrix { field, data })
    }

    /// Real matrix from row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != n * n {
            return Err(Error::BadShape { n, len: entries.len() });
        }
        let data = DMatrix::from_row_iterator(n, n, entries.iter().map(|&x| Complex64::new(x, 0.0)));
        Ok(HermitianMatrix {
            field: Field::Real,
            data,
        })
    }

    /// Matrix over `field` from row-major complex entries.
    pub fn from_complex(field: Field, n: usize, entries: &[Complex64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != n * n {
            return Err(Error::BadShape { n, len: entries.len() });
        }
        Ok(HermitianMatrix {
            field,
            data: DMatrix::from_row_slice(n, n, entries),
        })
    }

    pub fn from_fn(field: Field, n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(HermitianMatrix {
            field,
            data: DMatrix::from_fn(n, n, f),
        })
    }

    pub fn identity(field: Field, n: usize) -> Result<Self> {
        Self::from_fn(field, n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// The rank-one operator `|psi><psi|`, entries `psi_i * conj(psi_j)`.
    pub fn projector(field: Field, psi: &[Complex64]) -> Result<Self> {
        Self::from_fn(field, psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    /// Re-tags the matrix. No entries change; admissibility is checked later.
    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<Complex64> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.data[(i, j)])
            .collect()
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `self + scale * other`.
    pub fn add_scaled(&self, other: &HermitianMatrix, scale: f64) -> Result<HermitianMatrix> {
        self.same_shape(other)?;
        Ok(HermitianMatrix {
            field: self.field,
            data: &self.data + other.data.map(|z| z * scale),
        })
    }

    pub fn scaled(&self, scale: f64) -> HermitianMatrix {
        HermitianMatrix {
            field: self.field,
            data: self.data.map(|z| z * scale),
        }
    }

    /// Principal submatrix on the given indices, in order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<HermitianMatrix> {
        Self::from_fn(self.field, indices.len(), |i, j| self.data[(indices[i], indices[j])])
    }

    fn same_shape(&self, other: &HermitianMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        if self.n() != other.n() {
            return Err(Error::BadShape {
                n: self.n(),
                len: other.data.len(),
            });
        }
        Ok(())
    }

    /// Finite entries, real entries over the real field, and conjugate
    /// symmetry within `tol.herm`.
    pub fn check_hermitian(&self, tol: &Tolerances) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let z = self.data[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation: f64::NAN,
                    });
                }
                if self.field == Field::Real && z.im.abs() > tol.herm {
                    return Err(Error::NotReal {
                        row: i,
                        col: j,
                        imag: z.im,
                    });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let deviation = (self.data[(i, j)] - self.data[(j, i)].conj()).norm();
                if deviation > tol.herm {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation,
                    });
                }
            }
        }
        Ok(())
    }

    /// Exactly Hermitian copy: `(A + A*) / 2`, imaginary parts dropped over
    /// the real field.
    pub(crate) fn hermitian_part(&self) -> DMatrix<Complex64> {
        let sym = (&self.data + self.data.adjoint()).map(|z| z * 0.5);
        match self.field {
            Field::Real => sym.map(|z| Complex64::new(z.re, 0.0)),
            Field::Complex => sym,
        }
    }
}

/// A Hermitian matrix with unit diagonal that passed the PSD test.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    base: HermitianMatrix,
    psd_floor: f64,
}

impl CorrelationMatrix {
    #[cfg(test)]
    pub(crate) fn new_unchecked(base: HermitianMatrix) -> Self {
        CorrelationMatrix { base, psd_floor: 0.0 }
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.base
    }

    /// Smallest eigenvalue found during validation.
    pub fn psd_floor(&self) -> f64 {
        self.psd_floor
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.base.get(row, col)
    }

    pub fn into_inner(self) -> HermitianMatrix {
        self.base
    }
}

impl AsRef<HermitianMatrix> for CorrelationMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        &self.base
    }
}

pub fn validate_correlation(m: &HermitianMatrix, tol: &Tolerances) -> Result<CorrelationMatrix> {
    tol.validate()?;
    m.check_hermitian(tol)?;
    for k in 0..m.n() {
        let d = m.get(k, k);
        if (d.re - 1.0).abs() > tol.diag || d.im.abs() > tol.herm {
            return Err(Error::DiagonalNotUnit { index: k, value: d.re });
        }
    }
    let eig = eigen_unchecked(m)?;
    let psd_floor = eig.values.last().copied().unwrap_or(0.0);
    if psd_floor < -tol.psd {
        return Err(Error::NotPsd { eigenvalue: psd_floor });
    }
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            let modulus = m.get(i, j).norm();
            if modulus > 1.0 + tol.entry {
                return Err(Error::EntryBoundViolated {
                    row: i,
                    col: j,
                    modulus,
                });
            }
        }
    }
    Ok(CorrelationMatrix {
        base: m.clone(),
        psd_floor,
    })
}

/// Eigenvalues in descending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k).iter().copied().collect()
    }

    /// `sum_k lambda_k v_k v_k*`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let n = self.vectors.nrows();
        let mut out = DMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vectors.column(k);
            out += (v * v.adjoint()).map(|z| z * lambda);
        }
        out
    }
}

pub fn eig_selfadjoint(m: &HermitianMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    m.check_hermitian(tol)?;
    eigen_unchecked(m)
}

/// Eigendecomposition of the Hermitian part of `m`, skipping validation.
pub(crate) fn eigen_unchecked(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = m.n();
    let budget = EIG_ITERATIONS_PER_DIM * n.max(1);
    let herm = m.hermitian_part();
    let (values, vectors) = match m.field() {
        Field::Real => {
            let real = herm.map(|z| z.re);
            let eig = SymmetricEigen::try_new(real, f64::EPSILON, budget).ok_or(Error::NoConvergence)?;
            (
                eig.eigenvalues.iter().copied().collect::<Vec<_>>(),
                eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
            )
        }
        Field::Complex => {
            let eig = SymmetricEigen::try_new(herm, f64::EPSILON, budget).ok_or(Error::NoConvergence)?;
            (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), eig.eigenvectors)
        }
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoConvergence);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = DMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    Ok(EigenDecomposition {
        values: sorted_values,
        vectors: sorted_vectors,
    })
}

/// Largest absolute eigenvalue.
pub fn operator_norm(m: &HermitianMatrix) -> Result<f64> {
    let eig = eigen_unchecked(m)?;
    Ok(eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max))
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(m: &HermitianMatrix) -> Result<f64> {
    let eig = eigen_unchecked(m)?;
    Ok(eig.values.iter().map(|v| v.abs()).sum())
}
