//! Sequential projective measurements under the Lüders update rule.
//!
//! Measuring `A` then `B` on `D` and seeing "yes" twice has probability
//! `tr[B A D A B] = tr[D ABA]`; the reverse order gives `tr[D BAB]`. Their
//! difference is the witness `<phi|G|phi>`, so comparing the two orders on
//! single systems is a direct experimental test.

use serde::Serialize;
use statrs::function::erf::erfc;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{DensityOperator, Projector, SquareMatrix, C64};
use crate::random::rng_for;
use crate::witness::bks_witness;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// Eigenvalue 0: the complement `I - P` fires.
    Zero,
    /// Eigenvalue 1: `P` fires.
    One,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::One
        } else {
            Outcome::Zero
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub projector: Projector,
    pub outcome: Outcome,
}

impl Step {
    pub fn new(projector: Projector, outcome: Outcome) -> Self {
        Self { projector, outcome }
    }

    fn effective(&self) -> Projector {
        match self.outcome {
            Outcome::One => self.projector.clone(),
            Outcome::Zero => self.projector.complement(),
        }
    }
}

/// Post-measurement state `P D P / tr[DP]` and the outcome probability
/// `tr[DP]` (with `P` replaced by `I - P` for [`Outcome::Zero`]).
pub fn luders_update(
    d: &DensityOperator,
    p: &Projector,
    outcome: Outcome,
    cfg: &Config,
) -> Result<(DensityOperator, f64)> {
    d.matrix().same_dim(p.matrix())?;
    let p = Step::new(p.clone(), outcome).effective();
    let pm = p.matrix();
    let probability = d.expectation(pm)?.re;
    if probability <= cfg.tol_null {
        return Err(Error::ZeroProbability { probability });
    }
    let post = (&(pm * d.matrix()) * pm).scale(C64::new(1.0 / probability, 0.0));
    Ok((DensityOperator::new(hermitize(&post), cfg)?, probability))
}

fn hermitize(m: &SquareMatrix) -> SquareMatrix {
    (m + &m.adjoint()).scale(C64::new(0.5, 0.0))
}

/// Probability of observing every outcome in `steps`, in order.
///
/// Computed by chaining [`luders_update`] and cross-checked against the
/// closed form `tr[M D M^dag]`, `M = P_k ... P_1`. A prefix of probability
/// at most `tol_null` makes the whole sequence return 0.
pub fn sequence_probability(d: &DensityOperator, steps: &[Step], cfg: &Config) -> Result<f64> {
    for s in steps {
        d.matrix().same_dim(s.projector.matrix())?;
    }
    let mut m = SquareMatrix::identity(d.dim());
    for s in steps {
        m = s.effective().matrix() * &m;
    }
    let closed = (&(&m * d.matrix()) * &m.adjoint()).trace().re;

    let mut state = d.clone();
    let mut chained = 1.0;
    for s in steps {
        match luders_update(&state, &s.projector, s.outcome, cfg) {
            Ok((next, p)) => {
                state = next;
                chained *= p;
            }
            Err(Error::ZeroProbability { .. }) => {
                chained = 0.0;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    // A zero-probability cut can drop up to tol_null of mass.
    let slack = if chained == 0.0 { cfg.tol_null } else { cfg.tol_identity };
    if (chained - closed).abs() > slack {
        return Err(Error::NumericalBreakdown {
            what: "chained Lüders probability vs closed form",
            residual: (chained - closed).abs(),
        });
    }
    Ok(chained)
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloEstimate {
    pub n: usize,
    pub seed: u64,
    pub hits_ab: usize,
    pub hits_ba: usize,
    pub est_ab: f64,
    pub est_ba: f64,
    pub se_ab: f64,
    pub se_ba: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderTestReport {
    /// `P(A = 1 then B = 1) = tr[DABA]`.
    pub s_ab: f64,
    /// `P(B = 1 then A = 1) = tr[DBAB]`.
    pub s_ba: f64,
    pub diff: f64,
    /// Witness computed independently by [`bks_witness`].
    pub witness: f64,
    pub monte_carlo: Option<MonteCarloEstimate>,
    pub z_score: Option<f64>,
    pub p_value: Option<f64>,
}

const MIN_SAMPLES: usize = 100;
const CHUNK: usize = 4096;

/// Runs the two-order experiment.
///
/// Exact order statistics are always computed. With `samples = Some(n)`,
/// each order is simulated `n` times by sampling the branch tree from the
/// exact branch probabilities, and the two proportions are compared by a
/// two-sided two-proportion z-test (normal approximation).
///
/// Samples are drawn in chunks of 4096; chunk `k` of order `o` (0 for
/// A-then-B, 1 for B-then-A) uses stream `(o << 32) | k` of `seed`, so the
/// result depends only on `(seed, n)`.
pub fn run_order_test(
    d: &DensityOperator,
    a: &Projector,
    b: &Projector,
    samples: Option<usize>,
    seed: u64,
    cfg: &Config,
) -> Result<OrderTestReport> {
    if let Some(n) = samples {
        if n < MIN_SAMPLES {
            return Err(Error::TooFewSamples { n });
        }
    }
    let one = |p: &Projector| Step::new(p.clone(), Outcome::One);
    let s_ab = sequence_probability(d, &[one(a), one(b)], cfg)?;
    let s_ba = sequence_probability(d, &[one(b), one(a)], cfg)?;
    let diff = s_ab - s_ba;

    let w = bks_witness(d, a, b, cfg)?;
    if (diff - w.witness.re).abs() > cfg.tol_identity {
        return Err(Error::NumericalBreakdown {
            what: "order difference vs witness",
            residual: (diff - w.witness.re).abs(),
        });
    }

    let mut report = OrderTestReport {
        s_ab,
        s_ba,
        diff,
        witness: w.witness.re,
        monte_carlo: None,
        z_score: None,
        p_value: None,
    };
    let Some(n) = samples else {
        return Ok(report);
    };

    let first_a = d.expectation(a.matrix())?.re;
    let first_b = d.expectation(b.matrix())?.re;
    let branch = |first: f64, both: f64| -> (f64, f64) {
        let first = first.clamp(0.0, 1.0);
        let second = if first > 0.0 {
            (both / first).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (first, second)
    };
    let hits_ab = simulate(branch(first_a, s_ab), n, seed, 0);
    let hits_ba = simulate(branch(first_b, s_ba), n, seed, 1);

    let nf = n as f64;
    let (p1, p2) = (hits_ab as f64 / nf, hits_ba as f64 / nf);
    let pooled = (hits_ab + hits_ba) as f64 / (2.0 * nf);
    let se = (pooled * (1.0 - pooled) * 2.0 / nf).sqrt();
    let (z, p_value) = if se > 0.0 {
        let z = (p1 - p2) / se;
        (z, erfc(z.abs() / std::f64::consts::SQRT_2))
    } else if hits_ab == hits_ba {
        (0.0, 1.0)
    } else {
        (f64::INFINITY.copysign(p1 - p2), 0.0)
    };

    report.monte_carlo = Some(MonteCarloEstimate {
        n,
        seed,
        hits_ab,
        hits_ba,
        est_ab: p1,
        est_ba: p2,
        se_ab: (p1 * (1.0 - p1) / nf).sqrt(),
        se_ba: (p2 * (1.0 - p2) / nf).sqrt(),
    });
    report.z_score = Some(z);
    report.p_value = Some(p_value);
    Ok(report)
}

/// Counts trials in which both branches succeed.
fn simulate((first, second): (f64, f64), n: usize, seed: u64, order: u64) -> usize {
    let mut hits = 0;
    let mut done = 0;
    let mut chunk = 0u64;
    while done < n {
        let len = CHUNK.min(n - done);
        let mut rng = rng_for(seed, (order << 32) | chunk);
        for _ in 0..len {
            if rng.random::<f64>() < first && rng.random::<f64>() < second {
                hits += 1;
            }
        }
        done += len;
        chunk += 1;
    }
    hits
}
