//! Convex decompositions certifying that a correlation matrix is not extreme.
//!
//! When the projectors `|eta_k><eta_k|` miss some direction of the
//! self-adjoint operators on `K`, pick a nonzero self-adjoint `R` orthogonal
//! to all of them (`tr(R |eta_k><eta_k|) = 0`). Then
//! `B[n][m] = <eta_n | R eta_m>` is Hermitian with zero diagonal, and with
//! `eps = 1 / ||R||` both `C + eps B` and `C - eps B` are correlation
//! matrices averaging to `C`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::extremality::{devectorize, svd, ProjectorSpan};
use crate::gram::GramFactor;
use crate::matrix::{
    eigen_unchecked, operator_norm, validate_correlation, Complex64, CorrelationMatrix, Field, HermitianMatrix,
    Tolerances,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Zero-diagonal Hermitian perturbation.
    pub b: HermitianMatrix,
    pub epsilon: f64,
    pub c_plus: CorrelationMatrix,
    pub c_minus: CorrelationMatrix,
    /// `epsilon` was halved after the exact step failed validation.
    pub damped: bool,
    /// The operator `R` on `F^r` (unit Frobenius norm) that induces `b`.
    pub operator: HermitianMatrix,
}

impl Witness {
    /// Re-checks every invariant of the decomposition against `c`.
    pub fn verify(&self, c: &CorrelationMatrix, tol: &Tolerances) -> Result<()> {
        if self.b.max_abs() <= tol.recon {
            return Err(Error::WitnessDegenerate);
        }
        for k in 0..self.b.n() {
            let value = self.b.get(k, k).norm();
            if value > tol.recon {
                return Err(Error::WitnessNotOrthogonal { index: k, value });
            }
        }
        self.b.check_hermitian(tol)?;
        let plus = c.matrix().add_scaled(&self.b, self.epsilon)?;
        let minus = c.matrix().add_scaled(&self.b, -self.epsilon)?;
        validate_correlation(&plus, tol)?;
        validate_correlation(&minus, tol)?;
        let error = plus
            .max_abs_diff(self.c_plus.matrix())?
            .max(minus.max_abs_diff(self.c_minus.matrix())?);
        if error > tol.recon {
            return Err(Error::ReconstructionFailed { error });
        }
        Ok(())
    }

    /// Entrywise `(C+ + C-) / 2`.
    pub fn midpoint(&self) -> HermitianMatrix {
        self.c_plus
            .matrix()
            .add_scaled(self.c_minus.matrix(), 1.0)
            .expect("c_plus and c_minus share shape and field")
            .scaled(0.5)
    }
}

/// Unit vector orthogonal to the row space of the projector arrangement:
/// the right singular vector of the smallest singular value. The arrangement
/// is padded with zero rows to at least square so the SVD returns a full
/// basis of the ambient space.
fn complement_direction(span: &ProjectorSpan) -> Result<Vec<f64>> {
    let p = span.ambient_dim();
    let a = span.arrangement();
    let rows = a.nrows().max(p);
    let padded = a.resize_vertically(rows, 0.0);
    let decomposition = svd(padded, true)?;
    let v_t = decomposition.v_t.as_ref().ok_or(Error::NoConvergence)?;
    let sigma = &decomposition.singular_values;
    let smallest = (0..sigma.len())
        .min_by(|&a, &b| sigma[a].total_cmp(&sigma[b]).then(b.cmp(&a)))
        .ok_or(Error::WitnessDegenerate)?;
    let mut direction: Vec<f64> = v_t.row(smallest).iter().copied().collect();
    let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::WitnessDegenerate);
    }
    direction.iter_mut().for_each(|x| *x /= norm);
    Ok(direction)
}

/// Sign making the first non-negligible upper-triangular entry of `b` have
/// a positive dominant component.
fn canonical_sign(b: &DMatrix<Complex64>, threshold: f64) -> f64 {
    let n = b.nrows();
    for i in 0..n {
        for j in i + 1..n {
            let z = b[(i, j)];
            if z.norm() > threshold {
                let lead = if z.re.abs() >= z.im.abs() { z.re } else { z.im };
                return if lead < 0.0 { -1.0 } else { 1.0 };
            }
        }
    }
    1.0
}

fn decompose(
    c: &CorrelationMatrix,
    b: &HermitianMatrix,
    epsilon: f64,
    tol: &Tolerances,
) -> Result<(CorrelationMatrix, CorrelationMatrix)> {
    let plus = c.matrix().add_scaled(b, epsilon)?;
    let minus = c.matrix().add_scaled(b, -epsilon)?;
    let check = |m: &HermitianMatrix| -> Result<CorrelationMatrix> {
        validate_correlation(m, tol).map_err(|e| match e {
            Error::NotPsd { eigenvalue } => Error::ValidationFailed { eigenvalue },
            other => other,
        })
    };
    Ok((check(&plus)?, check(&minus)?))
}

pub fn find_witness(c: &CorrelationMatrix, g: &GramFactor, span: &ProjectorSpan, tol: &Tolerances) -> Result<Witness> {
    if span.is_full() {
        return Err(Error::IsExtreme);
    }
    let field = g.field();
    let r = g.r();
    let direction = complement_direction(span)?;
    let operator = devectorize(field, r, &direction)?;

    let eta = g.as_matrix();
    let raw = eta.adjoint() * &operator * eta;
    for k in 0..raw.nrows() {
        let value = raw[(k, k)].norm();
        if value > tol.recon {
            return Err(Error::WitnessNotOrthogonal { index: k, value });
        }
    }
    let sign = canonical_sign(&raw, tol.recon);
    let n = raw.nrows();
    let b = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            return Complex64::new(0.0, 0.0);
        }
        let z = (raw[(i, j)] + raw[(j, i)].conj()) * (0.5 * sign);
        match field {
            Field::Real => Complex64::new(z.re, 0.0),
            Field::Complex => z,
        }
    });
    let b = HermitianMatrix::from_matrix(field, b)?;
    if b.max_abs() <= tol.recon {
        return Err(Error::WitnessDegenerate);
    }
    let operator = HermitianMatrix::from_matrix(field, operator.map(|z| z * sign))?;

    let epsilon = 1.0 / operator_norm(&operator)?;
    let (c_plus, c_minus, epsilon, damped) = match decompose(c, &b, epsilon, tol) {
        Ok((p, m)) => (p, m, epsilon, false),
        Err(Error::ValidationFailed { .. }) => {
            let (p, m) = decompose(c, &b, epsilon / 2.0, tol)?;
            (p, m, epsilon / 2.0, true)
        }
        Err(e) => return Err(e),
    };
    Ok(Witness {
        b,
        epsilon,
        c_plus,
        c_minus,
        damped,
        operator,
    })
}

/// Smallest eigenvalue of `I + s R` for `s = +-epsilon`.
pub fn identity_margin(operator: &HermitianMatrix, epsilon: f64) -> Result<f64> {
    let id = HermitianMatrix::identity(operator.field(), operator.n())?;
    let mut floor = f64::INFINITY;
    for s in [epsilon, -epsilon] {
        let shifted = id.add_scaled(operator, s)?;
        let eig = eigen_unchecked(&shifted)?;
        floor = floor.min(eig.values.last().copied().unwrap_or(0.0));
    }
    Ok(floor)
}
