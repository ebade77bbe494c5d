//! Validated operator roles. A value of each type can only be obtained
//! through its checking constructor, so downstream code can rely on the
//! invariant without re-checking it.

use serde::Serialize;

use super::eig::hermitian_eig;
use super::matrix::{inner, multiply, norm, SquareMatrix, C64, ONE, ZERO};
use crate::config::{Config, MAX_DIM};
use crate::error::{Error, Result};

/// Unit vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Accepts `amplitudes` if its norm is 1 within `tol_identity`.
    pub fn new(amplitudes: Vec<C64>, cfg: &Config) -> Result<Self> {
        check_vector(&amplitudes)?;
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > cfg.tol_identity {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        check_vector(&amplitudes)?;
        let n = norm(&amplitudes);
        if n == 0.0 {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
        })
    }

    /// Canonical basis vector `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension { dim, max: MAX_DIM });
        }
        if index >= dim {
            return Err(Error::OutcomeOutOfRange { index, outcomes: dim });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { amplitudes })
    }

    pub(crate) fn from_raw(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `|phi><phi|`.
    pub fn projector_matrix(&self) -> SquareMatrix {
        SquareMatrix::outer(&self.amplitudes, &self.amplitudes).expect("validated state")
    }

    /// Product state `self (x) other`.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let dim = self.dim() * other.dim();
        if dim > MAX_DIM {
            return Err(Error::InvalidDimension { dim, max: MAX_DIM });
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        Ok(Self { amplitudes })
    }
}

fn check_vector(v: &[C64]) -> Result<()> {
    if v.is_empty() || v.len() > MAX_DIM {
        return Err(Error::InvalidDimension {
            dim: v.len(),
            max: MAX_DIM,
        });
    }
    if let Some(index) = v.iter().position(|z| !z.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(())
}

/// Hermitian idempotent operator with spectrum in {0, 1}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Projector {
    matrix: SquareMatrix,
    rank: usize,
}

impl Projector {
    pub fn new(matrix: SquareMatrix, cfg: &Config) -> Result<Self> {
        let tol = cfg.tol_identity;
        let residual = matrix.hermiticity_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        let residual = (&(&matrix * &matrix) - &matrix).frobenius_norm();
        if residual > tol {
            return Err(Error::NotIdempotent { residual });
        }
        let eig = hermitian_eig(&matrix, cfg)?;
        let mut rank = 0;
        for &lambda in &eig.eigenvalues {
            if (lambda - 1.0).abs() <= tol {
                rank += 1;
            } else if lambda.abs() > tol {
                return Err(Error::NotProjectorSpectrum { eigenvalue: lambda });
            }
        }
        Ok(Self { matrix, rank })
    }

    /// Rank-one projector `|phi><phi|`.
    pub fn from_state(phi: &PureState, cfg: &Config) -> Result<Self> {
        Self::new(phi.projector_matrix(), cfg)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: SquareMatrix::identity(dim),
            rank: dim,
        }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `I - P`.
    pub fn complement(&self) -> Projector {
        Projector {
            matrix: &SquareMatrix::identity(self.dim()) - &self.matrix,
            rank: self.dim() - self.rank,
        }
    }

    /// `P (x) Q`, a projector on the composite space.
    pub fn tensor(&self, other: &Projector) -> Result<Projector> {
        Ok(Projector {
            matrix: self.matrix.tensor(&other.matrix)?,
            rank: self.rank * other.rank,
        })
    }
}

/// Positive semidefinite, unit-trace Hermitian operator.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityOperator {
    matrix: SquareMatrix,
}

impl DensityOperator {
    pub fn new(matrix: SquareMatrix, cfg: &Config) -> Result<Self> {
        let tol = cfg.tol_identity;
        let residual = matrix.hermiticity_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = hermitian_eig(&matrix, cfg)?;
        let min = eig.eigenvalues[0];
        if min < -tol {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(Self { matrix })
    }

    /// `|phi><phi|`.
    pub fn from_pure(phi: &PureState) -> Self {
        Self {
            matrix: phi.projector_matrix(),
        }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `tr[D^2]`.
    pub fn purity(&self) -> f64 {
        multiply(&self.matrix, &self.matrix).expect("square").trace().re
    }

    /// `tr[D M]`.
    pub fn expectation(&self, m: &SquareMatrix) -> Result<C64> {
        Ok(multiply(&self.matrix, m)?.trace())
    }

    /// `D1 (x) D2`.
    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        Ok(Self {
            matrix: self.matrix.tensor(&other.matrix)?,
        })
    }

    /// If the state is pure within `tol`, returns its state vector.
    pub fn as_pure(&self, cfg: &Config) -> Option<PureState> {
        if (self.purity() - 1.0).abs() > cfg.tol_eig {
            return None;
        }
        let eig = hermitian_eig(&self.matrix, cfg).ok()?;
        eig.eigenvectors.last().cloned()
    }
}

/// `|<u|v>|`.
pub fn overlap(u: &PureState, v: &PureState) -> f64 {
    inner(u.amplitudes(), v.amplitudes()).norm()
}
