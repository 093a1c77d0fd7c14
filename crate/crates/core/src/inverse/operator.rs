use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{FrozenError, Result};

/// Below this the shifted operator counts as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    /// The map `f ↦ p` for a fixed function `p`.
    Constant(Vec<Complex64>),
    /// Multiplication by `c`.
    Scalar(Complex64),
    /// Dense matrix acting on grid samples.
    Matrix(DMatrix<Complex64>),
}

/// An operator on functions of `x ∈ (0, L)`, represented on the samples `x_j = j/N`, `j = 0..=L·N`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    kind: OperatorKind,
    domain_length: f64,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, domain_length: f64) -> Result<Self> {
        if !(domain_length > 0.0 && domain_length <= 1.0) {
            return Err(FrozenError::Operator(format!("domain length {domain_length} outside (0, 1]")));
        }
        if let OperatorKind::Matrix(m) = &kind {
            if m.nrows() != m.ncols() {
                return Err(FrozenError::Operator("matrix operator must be square".into()));
            }
        }
        Ok(Self { kind, domain_length })
    }

    pub fn constant(p: Vec<Complex64>, domain_length: f64) -> Result<Self> {
        Self::new(OperatorKind::Constant(p), domain_length)
    }

    pub fn scalar(c: Complex64, domain_length: f64) -> Result<Self> {
        Self::new(OperatorKind::Scalar(c), domain_length)
    }

    pub fn matrix(m: DMatrix<Complex64>, domain_length: f64) -> Result<Self> {
        Self::new(OperatorKind::Matrix(m), domain_length)
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn domain_length(&self) -> f64 {
        self.domain_length
    }

    /// Checks that `I + scale·A` is invertible.
    pub fn validate(&self, scale: Complex64) -> Result<()> {
        match &self.kind {
            OperatorKind::Constant(_) => Ok(()),
            OperatorKind::Scalar(c) => {
                if (1.0 + scale * c).norm() <= SINGULARITY_THRESHOLD {
                    Err(FrozenError::Operator(format!(
                        "I + {scale}·{c} is not invertible"
                    )))
                } else {
                    Ok(())
                }
            }
            OperatorKind::Matrix(m) => {
                let shifted = shifted(m, scale);
                let smallest = shifted
                    .singular_values()
                    .iter()
                    .copied()
                    .fold(f64::INFINITY, f64::min);
                if smallest <= SINGULARITY_THRESHOLD {
                    Err(FrozenError::Operator(format!(
                        "I + scale·A is numerically singular (sigma_min = {smallest:.3e})"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// `A (I + scale·A)^{-1} u`.
    pub fn apply_resolvent(&self, u: &[Complex64], scale: Complex64) -> Result<Vec<Complex64>> {
        self.validate(scale)?;
        match &self.kind {
            OperatorKind::Constant(p) => {
                if p.len() != u.len() {
                    return Err(FrozenError::Operator(format!(
                        "constant operator has {} samples, sub-grid needs {}",
                        p.len(),
                        u.len()
                    )));
                }
                Ok(p.clone())
            }
            OperatorKind::Scalar(c) => {
                let f = c / (1.0 + scale * c);
                Ok(u.iter().map(|&x| f * x).collect())
            }
            OperatorKind::Matrix(m) => {
                if m.nrows() != u.len() {
                    return Err(FrozenError::Operator(format!(
                        "matrix operator is {0}x{0}, sub-grid needs {1}",
                        m.nrows(),
                        u.len()
                    )));
                }
                let rhs = DVector::from_column_slice(u);
                let f = shifted(m, scale)
                    .lu()
                    .solve(&rhs)
                    .ok_or_else(|| FrozenError::Operator("LU solve failed".into()))?;
                Ok((m * f).iter().copied().collect())
            }
        }
    }
}

fn shifted(m: &DMatrix<Complex64>, scale: Complex64) -> DMatrix<Complex64> {
    DMatrix::identity(m.nrows(), m.ncols()) + m * scale
}
