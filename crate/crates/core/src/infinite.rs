//! Infinite correlation matrices given by entry rules, and finite evidence
//! gathered from their leading principal truncations.
//!
//! Nothing here ever labels an infinite matrix extreme. A scan reports the
//! rank and verdict of each truncation and, when the rank has reached the
//! generator's dimension and every later truncation is extreme, says so.

use serde::{Deserialize, Serialize};

use crate::constructors::sample_unit_vector;
use crate::error::{Error, Result};
use crate::extremality::{check_extreme, Verdict};
use crate::gram::{inner, rank};
use crate::matrix::{validate_correlation, Complex64, CorrelationMatrix, Field, HermitianMatrix, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixGenerator {
    /// Gram matrix of the normalized seeded sequence in `F^dim`.
    Proposition1Stream {
        dim: usize,
        field: Field,
        seed: u64,
    },
    ConstantOnes {
        field: Field,
    },
    /// A finite matrix extended by repeating its last index forever.
    FromFiniteCycled {
        base: CorrelationMatrix,
    },
}

impl MatrixGenerator {
    pub fn field(&self) -> Field {
        match self {
            MatrixGenerator::Proposition1Stream { field, .. } | MatrixGenerator::ConstantOnes { field } => *field,
            MatrixGenerator::FromFiniteCycled { base } => base.field(),
        }
    }

    /// Entry `(row, col)` of the infinite matrix, zero-based.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        match self {
            MatrixGenerator::Proposition1Stream { dim, field, seed } => {
                if row == col {
                    return Complex64::new(1.0, 0.0);
                }
                let a = sample_unit_vector(*field, *dim, *seed, row as u64);
                let b = sample_unit_vector(*field, *dim, *seed, col as u64);
                inner(&a, &b)
            }
            MatrixGenerator::ConstantOnes { .. } => Complex64::new(1.0, 0.0),
            MatrixGenerator::FromFiniteCycled { base } => {
                let last = base.n() - 1;
                base.get(row.min(last), col.min(last))
            }
        }
    }

    /// Dimension of the closed span of the generating vectors.
    pub fn rank_ceiling(&self, tol: &Tolerances) -> Result<usize> {
        match self {
            MatrixGenerator::Proposition1Stream { dim, .. } => Ok(*dim),
            MatrixGenerator::ConstantOnes { .. } => Ok(1),
            MatrixGenerator::FromFiniteCycled { base } => rank(base, tol),
        }
    }

    fn leading_block(&self, n: usize) -> Result<HermitianMatrix> {
        let field = self.field();
        match self {
            MatrixGenerator::Proposition1Stream { dim, seed, .. } => {
                if *dim == 0 {
                    return Err(Error::InvalidSpec("dimension must be at least 1".into()));
                }
                let vectors: Vec<Vec<Complex64>> = (0..n as u64)
                    .map(|k| sample_unit_vector(field, *dim, *seed, k))
                    .collect();
                HermitianMatrix::from_fn(field, n, |i, j| {
                    if i == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        inner(&vectors[i], &vectors[j])
                    }
                })
            }
            _ => HermitianMatrix::from_fn(field, n, |i, j| self.entry(i, j)),
        }
    }
}

/// The `n x n` leading principal submatrix.
pub fn truncate(generator: &MatrixGenerator, n: usize, tol: &Tolerances) -> Result<CorrelationMatrix> {
    if n == 0 {
        return Err(Error::InvalidSpec("truncation size must be at least 1".into()));
    }
    let m = generator.leading_block(n)?;
    for i in 0..n {
        let d = m.get(i, i);
        if (d - Complex64::new(1.0, 0.0)).norm() > tol.diag {
            return Err(Error::GeneratorInconsistent {
                row: i,
                col: i,
                reason: format!("diagonal entry {d} is not 1"),
            });
        }
        for j in i + 1..n {
            if (m.get(i, j) - m.get(j, i).conj()).norm() > tol.herm {
                return Err(Error::GeneratorInconsistent {
                    row: i,
                    col: j,
                    reason: "entry rule is not Hermitian".into(),
                });
            }
        }
    }
    validate_correlation(&m, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationTrace {
    pub sizes: Vec<usize>,
    pub ranks: Vec<usize>,
    pub span_dims: Vec<usize>,
    pub ambient_dims: Vec<usize>,
    pub verdicts: Vec<Verdict>,
    /// Smallest recorded size from which rank and verdict stay constant.
    pub stabilized_at: Option<usize>,
    /// Smallest recorded size whose rank equals the generator dimension and
    /// from which every verdict is extreme.
    pub saturated_at: Option<usize>,
    pub rank_ceiling: usize,
    pub statement: String,
}

pub fn truncation_scan(
    generator: &MatrixGenerator,
    n_min: usize,
    n_max: usize,
    step: usize,
    tol: &Tolerances,
) -> Result<TruncationTrace> {
    if n_min == 0 || n_min > n_max || step == 0 {
        return Err(Error::InvalidSpec(format!(
            "scan grid needs 1 <= min <= max and step >= 1 (got {n_min}..{n_max} step {step})"
        )));
    }
    let ceiling = generator.rank_ceiling(tol)?;
    let mut trace = TruncationTrace {
        sizes: Vec::new(),
        ranks: Vec::new(),
        span_dims: Vec::new(),
        ambient_dims: Vec::new(),
        verdicts: Vec::new(),
        stabilized_at: None,
        saturated_at: None,
        rank_ceiling: ceiling,
        statement: String::new(),
    };
    for n in (n_min..=n_max).step_by(step) {
        let c = truncate(generator, n, tol)?;
        let report = check_extreme(&c, tol)?;
        trace.sizes.push(n);
        trace.ranks.push(report.rank);
        trace.span_dims.push(report.span_dim);
        trace.ambient_dims.push(report.ambient_dim);
        trace.verdicts.push(report.verdict);
    }

    let len = trace.sizes.len();
    let mut start = len - 1;
    while start > 0
        && trace.ranks[start - 1] == trace.ranks[len - 1]
        && trace.verdicts[start - 1] == trace.verdicts[len - 1]
    {
        start -= 1;
    }
    trace.stabilized_at = Some(trace.sizes[start]);

    let mut first_extreme_tail = len;
    while first_extreme_tail > 0 && trace.verdicts[first_extreme_tail - 1] == Verdict::Extreme {
        first_extreme_tail -= 1;
    }
    trace.saturated_at = (first_extreme_tail..len)
        .find(|&i| trace.ranks[i] == ceiling)
        .map(|i| trace.sizes[i]);

    trace.statement = match trace.saturated_at {
        Some(n0) => format!(
            "all truncations from n = {n0} to n = {n_max} are extreme with rank {ceiling}; \
             extremality of the infinite matrix is consistent with but not certified by this evidence"
        ),
        None => format!(
            "no extreme truncation with saturated rank {ceiling} persists up to n = {n_max}; \
             no conclusion about the infinite matrix"
        ),
    };
    Ok(trace)
}
