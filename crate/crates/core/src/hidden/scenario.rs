use serde::Serialize;

use super::simplex::LinearProgram;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{commutator, hermitian_eig, DensityOperator, SquareMatrix, C64};

/// One distinct eigenvalue and the projector onto its eigenspace.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralComponent {
    pub value: f64,
    pub projector: SquareMatrix,
}

/// A Hermitian observable with its spectrum merged into one outcome per
/// distinct eigenvalue (ascending).
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioObservable {
    pub id: String,
    pub operator: SquareMatrix,
    pub spectrum: Vec<SpectralComponent>,
}

impl ScenarioObservable {
    /// Eigenvalues closer than `tol_eig` to the first member of a run are
    /// merged into one outcome.
    pub fn new(id: impl Into<String>, operator: SquareMatrix, cfg: &Config) -> Result<Self> {
        let eig = hermitian_eig(&operator, cfg)?;
        let dim = operator.dim();
        let mut spectrum: Vec<SpectralComponent> = Vec::new();
        let mut anchor = f64::NAN;
        for (&lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            let vv = SquareMatrix::outer(v.amplitudes(), v.amplitudes())?;
            match spectrum.last_mut() {
                Some(last) if (lambda - anchor).abs() <= cfg.tol_eig => {
                    last.projector = &last.projector + &vv;
                    // running mean of the merged run
                    let k = last.projector.trace().re.round();
                    last.value += (lambda - last.value) / k;
                }
                _ => {
                    anchor = lambda;
                    spectrum.push(SpectralComponent {
                        value: lambda,
                        projector: vv,
                    });
                }
            }
        }
        debug_assert_eq!(
            spectrum.iter().map(|c| c.projector.trace().re).sum::<f64>().round() as usize,
            dim
        );
        Ok(Self {
            id: id.into(),
            operator,
            spectrum,
        })
    }

    pub fn outcomes(&self) -> usize {
        self.spectrum.len()
    }

    fn component(&self, index: usize) -> Result<&SpectralComponent> {
        self.spectrum.get(index).ok_or(Error::OutcomeOutOfRange {
            index,
            outcomes: self.spectrum.len(),
        })
    }
}

/// A state together with a finite observable set. Commuting pairs are
/// derived from the operators, never asserted by the caller.
#[derive(Debug, Clone, Serialize)]
pub struct HvScenario {
    pub state: DensityOperator,
    pub observables: Vec<ScenarioObservable>,
    /// Pairs `(i, j)`, `i < j`, with `||[O_i, O_j]||_F <= tol_commute`.
    pub commuting_pairs: Vec<(usize, usize)>,
}

impl HvScenario {
    pub fn new(state: DensityOperator, observables: Vec<ScenarioObservable>, cfg: &Config) -> Result<Self> {
        if observables.is_empty() {
            return Err(Error::EmptyScenario);
        }
        for o in &observables {
            state.matrix().same_dim(&o.operator)?;
        }
        let size = observables
            .iter()
            .try_fold(1u128, |acc, o| acc.checked_mul(o.outcomes() as u128))
            .unwrap_or(u128::MAX);
        if size > cfg.assignment_cap as u128 {
            return Err(Error::AssignmentCapExceeded {
                size,
                cap: cfg.assignment_cap,
            });
        }
        let mut commuting_pairs = Vec::new();
        for i in 0..observables.len() {
            for j in (i + 1)..observables.len() {
                let c = commutator(&observables[i].operator, &observables[j].operator)?;
                if c.frobenius_norm() <= cfg.tol_commute {
                    commuting_pairs.push((i, j));
                }
            }
        }
        Ok(Self {
            state,
            observables,
            commuting_pairs,
        })
    }

    /// Number of global value assignments.
    pub fn assignment_count(&self) -> usize {
        self.observables.iter().map(|o| o.outcomes()).product()
    }

    /// Value indices of assignment `k`; observable 0 is the most
    /// significant digit.
    pub fn assignment(&self, mut k: usize) -> Vec<usize> {
        let mut digits = vec![0; self.observables.len()];
        for (slot, o) in digits.iter_mut().zip(&self.observables).rev() {
            *slot = k % o.outcomes();
            k /= o.outcomes();
        }
        digits
    }

    fn is_commuting(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.commuting_pairs.contains(&key)
    }
}

/// `tr[D P_v]` for outcome `value_index` of `obs`.
pub fn quantum_marginal(d: &DensityOperator, obs: &ScenarioObservable, value_index: usize) -> Result<f64> {
    Ok(d.expectation(&obs.component(value_index)?.projector)?.re)
}

/// `tr[D P_v Q_w]` for a commuting pair of observables of `scenario`.
pub fn quantum_joint(scenario: &HvScenario, i: usize, j: usize, vi: usize, vj: usize) -> Result<f64> {
    if i == j || !scenario.is_commuting(i, j) {
        return Err(Error::NonCommutingJoint(i, j));
    }
    let p = &scenario.observables[i].component(vi)?.projector;
    let q = &scenario.observables[j].component(vj)?.projector;
    Ok(scenario.state.expectation(&(p * q))?.re)
}

/// Emits the joint-distribution LP for `scenario`.
///
/// Variables are the probabilities of global assignments, indexed as in
/// [`HvScenario::assignment`]. Rows, in order:
/// 1. normalization;
/// 2. single marginals, by observable index then ascending eigenvalue;
/// 3. joints of commuting pairs, pairs in lexicographic order, then value
///    index pairs in lexicographic order.
///
/// Rows implied by others are kept.
pub fn build_lp(scenario: &HvScenario) -> Result<LinearProgram> {
    let n_vars = scenario.assignment_count();
    let assignments: Vec<Vec<usize>> = (0..n_vars).map(|k| scenario.assignment(k)).collect();
    let mut rows = vec![vec![1.0; n_vars]];
    let mut rhs = vec![1.0];
    let mut row_labels = vec!["normalization".to_string()];

    for (i, obs) in scenario.observables.iter().enumerate() {
        for v in 0..obs.outcomes() {
            rows.push(assignments.iter().map(|s| indicator(s[i] == v)).collect());
            rhs.push(quantum_marginal(&scenario.state, obs, v)?);
            row_labels.push(format!("P({} = {})", obs.id, fmt_value(obs.spectrum[v].value)));
        }
    }
    for &(i, j) in &scenario.commuting_pairs {
        let (oi, oj) = (&scenario.observables[i], &scenario.observables[j]);
        for vi in 0..oi.outcomes() {
            for vj in 0..oj.outcomes() {
                rows.push(
                    assignments
                        .iter()
                        .map(|s| indicator(s[i] == vi && s[j] == vj))
                        .collect(),
                );
                rhs.push(quantum_joint(scenario, i, j, vi, vj)?);
                row_labels.push(format!(
                    "P({} = {}, {} = {})",
                    oi.id,
                    fmt_value(oi.spectrum[vi].value),
                    oj.id,
                    fmt_value(oj.spectrum[vj].value)
                ));
            }
        }
    }
    Ok(LinearProgram {
        n_vars,
        rows,
        rhs,
        row_labels,
    })
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn fmt_value(v: f64) -> String {
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        format!("{r}")
    } else {
        format!("{v:.6}")
    }
}

/// `sum_k P_k` over the projectors of an observable; equals `I`.
pub fn spectral_sum(obs: &ScenarioObservable) -> SquareMatrix {
    obs.spectrum
        .iter()
        .fold(SquareMatrix::zeros(obs.operator.dim()), |acc, c| &acc + &c.projector)
}

/// `sum_k lambda_k P_k`.
pub fn spectral_reconstruction(obs: &ScenarioObservable) -> SquareMatrix {
    obs.spectrum
        .iter()
        .fold(SquareMatrix::zeros(obs.operator.dim()), |acc, c| {
            &acc + &c.projector.scale(C64::new(c.value, 0.0))
        })
}
