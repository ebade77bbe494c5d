use serde::{Deserialize, Serialize};

/// Largest operator dimension accepted anywhere in the crate.
pub const MAX_DIM: usize = 64;

/// Numerical tolerances and iteration limits.
///
/// Each routine takes the configuration explicitly; [`Config::default`]
/// gives the standard values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Algebraic identities on validated inputs (idempotence, Hermiticity,
    /// normalization, operator identities).
    pub tol_identity: f64,
    /// Output of the iterative eigensolver.
    pub tol_eig: f64,
    /// Classifies a pair of operators as commuting.
    pub tol_commute: f64,
    /// Feasibility and certificate checks in the simplex solver.
    pub tol_lp: f64,
    /// Threshold for treating an eigenvalue, a trace or a norm as nonzero.
    pub tol_null: f64,
    /// Jacobi sweep limit.
    pub max_sweeps: usize,
    /// Upper bound on the number of joint value assignments in a scenario.
    pub assignment_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol_identity: 1e-12,
            tol_eig: 1e-10,
            tol_commute: 1e-9,
            tol_lp: 1e-9,
            tol_null: 1e-8,
            max_sweeps: 100,
            assignment_cap: 1_000_000,
        }
    }
}
