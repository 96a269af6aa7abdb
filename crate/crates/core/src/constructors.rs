//! Correlation matrices with known structure.
//!
//! * Li–Tam style extreme points of rank `r`: the Gram matrix of the basis
//!   vectors `f_1..f_r`, the sums `(f_n + f_m)/sqrt2` for `n < m`, and over
//!   the complex field also `(f_n + i f_m)/sqrt2`, padded with copies of
//!   `f_1`. The projectors of these vectors span every self-adjoint operator
//!   on `F^r`, which makes the matrix extreme.
//! * Seeded pseudo-random unit-vector sequences, used both as truncations of
//!   a dense sequence and as an unlabeled corpus.
//!
//! Random vectors come from ChaCha20 seeded with `seed`, one stream per index
//! (`set_stream(k)`), so vector `k` is reproducible without generating its
//! predecessors. Each real coordinate (or each real and imaginary part) is a
//! standard normal draw; draws with norm below `1e-6` are repeated.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremality::Verdict;
use crate::gram::{gram_factor, GramFactor};
use crate::matrix::{validate_correlation, Complex64, CorrelationMatrix, Field, HermitianMatrix, Tolerances};

const MIN_SAMPLE_NORM: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    LiTamComplex,
    LiTamReal,
    Proposition1,
    AllOnes,
    Identity,
    RandomGram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub field: Field,
    /// Dimension of the vector space the Gram vectors live in.
    pub rank_target: usize,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub matrix: CorrelationMatrix,
    pub gram: Option<GramFactor>,
    /// Ground-truth verdict when the construction guarantees one.
    pub label: Option<Verdict>,
}

impl ConstructionSpec {
    pub fn validate(&self) -> Result<()> {
        let (n, r) = (self.n, self.rank_target);
        if n == 0 {
            return Err(Error::InvalidSpec("size must be at least 1".into()));
        }
        match self.kind {
            ConstructionKind::LiTamComplex => {
                if self.field != Field::Complex {
                    return Err(Error::InvalidSpec("litam-complex requires the complex field".into()));
                }
                check_rank_size(r, n, r * r)
            }
            ConstructionKind::LiTamReal => {
                if self.field != Field::Real {
                    return Err(Error::InvalidSpec("litam-real requires the real field".into()));
                }
                check_rank_size(r, n, r * (r + 1) / 2)
            }
            ConstructionKind::Proposition1 => {
                if r == 0 {
                    return Err(Error::InvalidSpec("dimension must be at least 1".into()));
                }
                Ok(())
            }
            ConstructionKind::RandomGram => {
                if r == 0 || r > n {
                    return Err(Error::InvalidSpec(format!(
                        "random dimension {r} must satisfy 1 <= d <= n = {n}"
                    )));
                }
                Ok(())
            }
            ConstructionKind::AllOnes | ConstructionKind::Identity => Ok(()),
        }
    }

    pub fn build(&self, tol: &Tolerances) -> Result<Construction> {
        self.validate()?;
        let (n, r, field, seed) = (self.n, self.rank_target, self.field, self.seed);
        let construction = match self.kind {
            ConstructionKind::LiTamComplex => {
                let (matrix, g) = li_tam_complex(r, n, tol)?;
                Construction {
                    matrix,
                    gram: Some(g),
                    label: Some(Verdict::Extreme),
                }
            }
            ConstructionKind::LiTamReal => {
                let (matrix, g) = li_tam_real(r, n, tol)?;
                Construction {
                    matrix,
                    gram: Some(g),
                    label: Some(Verdict::Extreme),
                }
            }
            ConstructionKind::Proposition1 => {
                let (matrix, g) = proposition1(r, field, n, seed, tol)?;
                Construction {
                    matrix,
                    gram: Some(g),
                    label: None,
                }
            }
            ConstructionKind::RandomGram => Construction {
                matrix: random_gram(r, field, n, seed, tol)?,
                gram: None,
                label: None,
            },
            ConstructionKind::AllOnes => Construction {
                matrix: all_ones(n, field, tol)?,
                gram: None,
                label: Some(Verdict::Extreme),
            },
            ConstructionKind::Identity => Construction {
                matrix: identity(n, field, tol)?,
                gram: None,
                label: Some(if n == 1 { Verdict::Extreme } else { Verdict::NotExtreme }),
            },
        };
        Ok(construction)
    }
}

fn check_rank_size(r: usize, n: usize, required: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidSpec("rank must be at least 1".into()));
    }
    if n < required {
        return Err(Error::SizeTooSmall { n, rank: r, required });
    }
    Ok(())
}

fn basis(r: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); r];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

/// The distinct vectors of the Li–Tam enumeration, in order: basis vectors,
/// then `(f_n + f_m)/sqrt2` for `n < m` lexicographically, then (complex
/// only) `(f_n + i f_m)/sqrt2` in the same order.
pub fn li_tam_vectors(field: Field, r: usize) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = (0..r).map(|i| basis(r, i)).collect();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    for &(i, j) in &pairs {
        let mut v = basis(r, i);
        v[i] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        v[j] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        out.push(v);
    }
    if field == Field::Complex {
        for &(i, j) in &pairs {
            let mut v = basis(r, i);
            v[i] = Complex64::new(FRAC_1_SQRT_2, 0.0);
            v[j] = Complex64::new(0.0, FRAC_1_SQRT_2);
            out.push(v);
        }
    }
    out
}

fn li_tam(field: Field, r: usize, n: usize, tol: &Tolerances) -> Result<(CorrelationMatrix, GramFactor)> {
    let required = field.ambient_dim(r);
    check_rank_size(r, n, required)?;
    let mut vectors = li_tam_vectors(field, r);
    vectors.resize(n, basis(r, 0));
    let g = GramFactor::from_vectors(field, &vectors, tol)?;
    let m = HermitianMatrix::from_fn(field, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            crate::gram::inner(&vectors[i], &vectors[j])
        }
    })?;
    Ok((validate_correlation(&m, tol)?, g))
}

/// Rank-`r` extreme point of size `n >= r^2` over the complex field.
pub fn li_tam_complex(r: usize, n: usize, tol: &Tolerances) -> Result<(CorrelationMatrix, GramFactor)> {
    li_tam(Field::Complex, r, n, tol)
}

/// Rank-`r` extreme point of size `n >= r(r+1)/2` over the real field.
pub fn li_tam_real(r: usize, n: usize, tol: &Tolerances) -> Result<(CorrelationMatrix, GramFactor)> {
    li_tam(Field::Real, r, n, tol)
}

/// The `index`-th raw sample (before normalization) of the seeded sequence
/// in `F^d`.
pub fn sample_vector(field: Field, d: usize, seed: u64, index: u64) -> Vec<Complex64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let v: Vec<Complex64> = (0..d)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = match field {
                    Field::Real => 0.0,
                    Field::Complex => rng.sample(StandardNormal),
                };
                Complex64::new(re, im)
            })
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm >= MIN_SAMPLE_NORM {
            return v;
        }
    }
}

/// `sample_vector` scaled to unit length.
pub fn sample_unit_vector(field: Field, d: usize, seed: u64, index: u64) -> Vec<Complex64> {
    let v = sample_vector(field, d, seed, index);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn seeded_gram(
    d: usize,
    field: Field,
    n: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<(CorrelationMatrix, Vec<Vec<Complex64>>)> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidSpec("dimension and size must be at least 1".into()));
    }
    let vectors: Vec<Vec<Complex64>> = (0..n as u64).map(|k| sample_unit_vector(field, d, seed, k)).collect();
    let m = HermitianMatrix::from_fn(field, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            crate::gram::inner(&vectors[i], &vectors[j])
        }
    })?;
    Ok((validate_correlation(&m, tol)?, vectors))
}

/// Truncation of the Gram matrix of a normalized seeded sequence in `F^d`.
/// Whether it is extreme is for [`crate::extremality::check_extreme`] to
/// decide; the returned factor is the sample itself when it spans `F^d` and
/// the eigendecomposition-based factor otherwise.
pub fn proposition1(
    d: usize,
    field: Field,
    n: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<(CorrelationMatrix, GramFactor)> {
    let (c, vectors) = seeded_gram(d, field, n, seed, tol)?;
    let g = match GramFactor::from_vectors(field, &vectors, tol) {
        Ok(g) => g,
        Err(Error::InvalidGramFactor(_)) => gram_factor(&c, tol)?,
        Err(e) => return Err(e),
    };
    Ok((c, g))
}

/// Same sampling as [`proposition1`], no factor and no label.
pub fn random_gram(d: usize, field: Field, n: usize, seed: u64, tol: &Tolerances) -> Result<CorrelationMatrix> {
    if d > n {
        return Err(Error::InvalidSpec(format!("dimension {d} exceeds size {n}")));
    }
    seeded_gram(d, field, n, seed, tol).map(|(c, _)| c)
}

pub fn all_ones(n: usize, field: Field, tol: &Tolerances) -> Result<CorrelationMatrix> {
    let m = HermitianMatrix::from_fn(field, n, |_, _| Complex64::new(1.0, 0.0))?;
    validate_correlation(&m, tol)
}

pub fn identity(n: usize, field: Field, tol: &Tolerances) -> Result<CorrelationMatrix> {
    validate_correlation(&HermitianMatrix::identity(field, n)?, tol)
}
