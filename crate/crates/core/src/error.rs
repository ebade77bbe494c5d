use thiserror::Error;

/// Errors raised by validation and by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid dimension {dim} (allowed 1..={max})")]
    InvalidDimension { dim: usize, max: usize },

    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("not Hermitian (||M - M^dag||_F = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("not idempotent (||P^2 - P||_F = {residual:e})")]
    NotIdempotent { residual: f64 },

    #[error("eigenvalue {eigenvalue} is neither 0 nor 1")]
    NotProjectorSpectrum { eigenvalue: f64 },

    #[error("vector is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("vectors are not orthogonal (|<xi|phi>| = {overlap:e})")]
    NotOrthogonal { overlap: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("effect exceeds the identity (max eigenvalue {max_eigenvalue})")]
    EffectAboveIdentity { max_eigenvalue: f64 },

    #[error("POVM effects do not sum to the identity (residual {residual:e})")]
    PovmIncomplete { residual: f64 },

    #[error("POVM has no effects")]
    EmptyPovm,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("numerical breakdown in {what} (residual {residual:e})")]
    NumericalBreakdown { what: &'static str, residual: f64 },

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("dimension 1 has no vector orthogonal to the state")]
    NoOrthogonalComplement,

    #[error("state is not an eigenvector of G (residual {residual:e})")]
    NotEigenvector { residual: f64 },

    #[error("observables {0} and {1} do not commute; their joint distribution is undefined")]
    NonCommutingJoint(usize, usize),

    #[error("observable is not dichotomic (||O^2 - I||_F = {residual:e})")]
    NotDichotomic { residual: f64 },

    #[error("assignment space has {size} points, cap is {cap}")]
    AssignmentCapExceeded { size: u128, cap: usize },

    #[error("scenario has no observables")]
    EmptyScenario,

    #[error("simplex exceeded {iterations} iterations")]
    IterationCap { iterations: usize },

    #[error("conditioning on an outcome of probability {probability:e}")]
    ZeroProbability { probability: f64 },

    #[error("{n} samples requested, at least 100 are required")]
    TooFewSamples { n: usize },

    #[error("value index {index} out of range for observable with {outcomes} outcomes")]
    OutcomeOutOfRange { index: usize, outcomes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
