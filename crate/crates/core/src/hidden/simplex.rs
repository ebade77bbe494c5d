//! Phase-one simplex for `A x = b, x >= 0`.
//!
//! Rows are sign-normalized so that `b >= 0`, one artificial column is
//! appended per row and the sum of artificials is minimized with Bland's
//! rule. A positive optimum proves infeasibility; the phase-one duals then
//! form a Farkas certificate `y` with `y^T A <= 0` and `y^T b > 0`.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};

/// Dense equality-constrained feasibility problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearProgram {
    pub n_vars: usize,
    /// Row-major constraint matrix, one `Vec` of length `n_vars` per row.
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub row_labels: Vec<String>,
}

impl LinearProgram {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// `max_i |(A x - b)_i|` together with the most negative entry of `x`
    /// (reported as a positive violation).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let eq = self
            .rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| (dot(row, x) - b).abs())
            .fold(0.0, f64::max);
        let neg = x.iter().map(|&v| (-v).max(0.0)).fold(0.0, f64::max);
        eq.max(neg)
    }

    /// Checks `y` as a Farkas certificate without reference to the solver:
    /// every column satisfies `y^T A_j <= tol` and `y^T b > tol`.
    pub fn verify_certificate(&self, y: &[f64], tol: f64) -> bool {
        if y.len() != self.n_rows() {
            return false;
        }
        let yb = dot(y, &self.rhs);
        let worst_col = (0..self.n_vars)
            .map(|j| self.rows.iter().zip(y).map(|(row, &yi)| row[j] * yi).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        yb > tol && worst_col <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityResult {
    pub status: Feasibility,
    /// One probability per LP variable when feasible.
    pub distribution: Option<Vec<f64>>,
    /// Farkas vector when infeasible.
    pub certificate: Option<Vec<f64>>,
    /// For a distribution: worst equality residual or negativity. For a
    /// certificate: `max_j y^T A_j` (should be `<= 0`).
    pub max_constraint_violation: f64,
    /// Optimal phase-one objective (total artificial mass).
    pub phase_one_objective: f64,
    pub pivots: usize,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status == Feasibility::Feasible
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

const PIVOT_EPS: f64 = 1e-12;

/// Decides feasibility of `lp`. Deterministic for identical input.
pub fn solve_feasibility(lp: &LinearProgram, cfg: &Config) -> Result<FeasibilityResult> {
    let m = lp.n_rows();
    let n = lp.n_vars;
    let width = n + m;

    // Tableau rows: [A | I | b] with b made nonnegative.
    let mut sign = vec![1.0; m];
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (i, (row, &b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
        debug_assert_eq!(row.len(), n);
        if b < 0.0 {
            sign[i] = -1.0;
        }
        let mut r = Vec::with_capacity(width + 1);
        r.extend(row.iter().map(|&v| v * sign[i]));
        r.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
        r.push(b * sign[i]);
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of min sum(artificials): c_j - c_B B^-1 A_j.
    let mut cost = vec![0.0; width + 1];
    for j in 0..n {
        cost[j] = -t.iter().map(|r| r[j]).sum::<f64>();
    }
    cost[width] = -t.iter().map(|r| r[width]).sum::<f64>();

    let max_pivots = 50 * (width + 1) * (m + 1);
    let mut pivots = 0;
    // Bland: lowest-index improving column.
    while let Some(enter) = (0..width).find(|&j| cost[j] < -PIVOT_EPS) {
        let mut leave: Option<(usize, f64)> = None;
        for (i, r) in t.iter().enumerate() {
            let a = r[enter];
            if a <= PIVOT_EPS {
                continue;
            }
            let ratio = r[width] / a;
            leave = match leave {
                None => Some((i, ratio)),
                Some((k, best)) => {
                    if ratio < best - PIVOT_EPS || ((ratio - best).abs() <= PIVOT_EPS && basis[i] < basis[k]) {
                        Some((i, ratio))
                    } else {
                        Some((k, best))
                    }
                }
            };
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let Some((row, _)) = leave else {
            return Err(Error::NumericalBreakdown {
                what: "phase-one ratio test",
                residual: cost[enter],
            });
        };
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::IterationCap { iterations: max_pivots });
        }
    }

    let objective = -cost[width];
    if objective > cfg.tol_lp {
        // Duals of the sign-normalized rows: y_i = 1 - reduced cost of
        // artificial i; undo the row sign flip.
        let y: Vec<f64> = (0..m).map(|i| (1.0 - cost[n + i]) * sign[i]).collect();
        let worst = (0..n)
            .map(|j| lp.rows.iter().zip(&y).map(|(r, &yi)| r[j] * yi).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        return Ok(FeasibilityResult {
            status: Feasibility::Infeasible,
            distribution: None,
            certificate: Some(y),
            max_constraint_violation: worst,
            phase_one_objective: objective,
            pivots,
        });
    }

    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width];
        }
    }
    Ok(FeasibilityResult {
        status: Feasibility::Feasible,
        max_constraint_violation: lp.violation(&x),
        distribution: Some(x),
        certificate: None,
        phase_one_objective: objective.max(0.0),
        pivots,
    })
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], row: usize, col: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f != 0.0 {
            for (v, &pv) in r.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            r[col] = 0.0;
        }
    }
    let f = cost[col];
    if f != 0.0 {
        for (v, &pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        cost[col] = 0.0;
    }
}
