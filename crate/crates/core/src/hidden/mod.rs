//! Hidden-variable feasibility on finite observable sets.
//!
//! A finite scenario admits a hidden-variable model exactly when some
//! probability distribution over global value assignments reproduces every
//! single-observable distribution and every joint distribution of a
//! commuting pair. That is a linear feasibility problem, solved here by a
//! dense phase-one simplex that returns either the distribution or a Farkas
//! certificate of infeasibility.
//!
//! The full hypothesis, quantifying over every one-dimensional projector, is
//! not a finite LP. Its consequence on a single pair of projectors is the
//! witness in [`crate::witness`]; [`sequential_consistency`] is the
//! matching finite probe.

mod chsh;
mod scenario;
mod simplex;

pub use chsh::{chsh_value, qubit_observable, ChshSettings};
pub use scenario::{
    build_lp, quantum_joint, quantum_marginal, spectral_reconstruction, spectral_sum, HvScenario, ScenarioObservable,
    SpectralComponent,
};
pub use simplex::{solve_feasibility, Feasibility, FeasibilityResult, LinearProgram};

use crate::config::Config;
use crate::error::Result;
use crate::linalg::{DensityOperator, Projector};

/// The four-cell LP over `p(x, y)`, `x, y in {0, 1}` (variable index
/// `2x + y`), with `p(x=1) = tr[DA]`, `p(y=1) = tr[DB]` and the cell
/// `p(1, 1)` pinned to both `tr[DABA]` and `tr[DBAB]`.
pub fn sequential_lp(d: &DensityOperator, a: &Projector, b: &Projector) -> Result<LinearProgram> {
    let (am, bm) = (a.matrix(), b.matrix());
    am.same_dim(bm)?;
    d.matrix().same_dim(am)?;
    let tr_da = d.expectation(am)?.re;
    let tr_db = d.expectation(bm)?.re;
    let s_ab = d.expectation(&(&(am * bm) * am))?.re;
    let s_ba = d.expectation(&(&(bm * am) * bm))?.re;
    Ok(LinearProgram {
        n_vars: 4,
        rows: vec![
            vec![1.0, 1.0, 1.0, 1.0],
            vec![0.0, 0.0, 1.0, 1.0],
            vec![0.0, 1.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ],
        rhs: vec![1.0, tr_da, tr_db, s_ab, s_ba],
        row_labels: vec![
            "normalization".into(),
            "P(A = 1) = tr[DA]".into(),
            "P(B = 1) = tr[DB]".into(),
            "P(A = 1, B = 1) = tr[DABA]".into(),
            "P(A = 1, B = 1) = tr[DBAB]".into(),
        ],
    })
}

/// Feasibility of a single joint distribution for `A` and `B` that matches
/// both sequential orders. Infeasible exactly when the two orders disagree.
pub fn sequential_consistency(
    d: &DensityOperator,
    a: &Projector,
    b: &Projector,
    cfg: &Config,
) -> Result<FeasibilityResult> {
    solve_feasibility(&sequential_lp(d, a, b)?, cfg)
}
