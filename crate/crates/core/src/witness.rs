//! The hidden-variable witness `<phi|G|phi> = tr[D ABA] - tr[D BAB]` and
//! clause-by-clause numerical checks of the two no-go theorems.
//!
//! If a joint-distribution model exists for `D` and both `tr[DA]` and
//! `tr[DB]` are nonzero, then `tr[DABA] = tr[DBAB]`. A nonzero witness under
//! those preconditions therefore rules the model out for that state.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::generators::{eigen_set, theorem2_pair};
use crate::linalg::{commutator, compound_commutator, inner, norm, DensityOperator, Projector, PureState, C64};

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    /// `<phi|G|phi>` for pure states, `tr[DG]` otherwise.
    pub witness: C64,
    /// `tr[D ABA] - tr[D BAB]`, the independent second route.
    pub trace_difference: f64,
    pub tr_da: f64,
    pub tr_db: f64,
    /// Both `tr[DA]` and `tr[DB]` exceed `tol_null`.
    pub preconditions_met: bool,
    /// Preconditions hold and `|witness| > tol_null`.
    pub bks_violated: bool,
}

impl WitnessReport {
    /// A trace below `tol_null` puts the state outside the argument.
    pub fn inconclusive(&self) -> bool {
        !self.preconditions_met
    }
}

pub fn bks_witness(d: &DensityOperator, a: &Projector, b: &Projector, cfg: &Config) -> Result<WitnessReport> {
    let (am, bm) = (a.matrix(), b.matrix());
    am.same_dim(bm)?;
    d.matrix().same_dim(am)?;

    let g = compound_commutator(a, b, cfg)?.matrix;
    let witness = match d.as_pure(cfg) {
        Some(phi) => g.expectation(phi.amplitudes())?,
        None => d.expectation(&g)?,
    };
    let aba = &(am * bm) * am;
    let bab = &(bm * am) * bm;
    let trace_difference = (d.expectation(&aba)? - d.expectation(&bab)?).re;

    let mismatch = (witness - C64::new(trace_difference, 0.0)).norm();
    if mismatch > cfg.tol_identity {
        return Err(Error::NumericalBreakdown {
            what: "<phi|G|phi> = tr[DABA] - tr[DBAB]",
            residual: mismatch,
        });
    }

    let tr_da = d.expectation(am)?.re;
    let tr_db = d.expectation(bm)?.re;
    let preconditions_met = tr_da > cfg.tol_null && tr_db > cfg.tol_null;
    Ok(WitnessReport {
        witness,
        trace_difference,
        tr_da,
        tr_db,
        preconditions_met,
        bks_violated: preconditions_met && witness.norm() > cfg.tol_null,
    })
}

pub fn bks_witness_pure(phi: &PureState, a: &Projector, b: &Projector, cfg: &Config) -> Result<WitnessReport> {
    bks_witness(&DensityOperator::from_pure(phi), a, b, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Lemma2,
    Theorem1,
    Theorem2,
    BbksQubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Pass,
    Fail,
    /// The hypotheses do not apply (e.g. a commuting pair for Theorem 1).
    Vacuous,
}

/// One numerical check: `value` is the raw evidence, `threshold` the
/// tolerance it was compared against.
#[derive(Debug, Clone, Serialize)]
pub struct Clause {
    pub label: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub status: ReportStatus,
    pub clauses: Vec<Clause>,
}

impl TheoremReport {
    fn new(theorem: TheoremId) -> Self {
        Self {
            theorem,
            status: ReportStatus::Pass,
            clauses: Vec::new(),
        }
    }

    fn vacuous(theorem: TheoremId, clause: Clause) -> Self {
        Self {
            theorem,
            status: ReportStatus::Vacuous,
            clauses: vec![clause],
        }
    }

    /// `value > threshold`.
    fn above(&mut self, label: impl Into<String>, value: f64, threshold: f64) {
        self.push(label, value, threshold, value > threshold);
    }

    /// `value <= threshold`.
    fn within(&mut self, label: impl Into<String>, value: f64, threshold: f64) {
        self.push(label, value, threshold, value <= threshold);
    }

    fn push(&mut self, label: impl Into<String>, value: f64, threshold: f64, pass: bool) {
        self.clauses.push(Clause {
            label: label.into(),
            value,
            threshold,
            pass,
        });
    }

    fn finish(mut self) -> Self {
        if self.status != ReportStatus::Vacuous {
            self.status = if self.clauses.iter().all(|c| c.pass) {
                ReportStatus::Pass
            } else {
                ReportStatus::Fail
            };
        }
        self
    }

    pub(crate) fn extend(&mut self, other: TheoremReport) {
        self.clauses.extend(other.clauses);
        if other.status == ReportStatus::Fail {
            self.status = ReportStatus::Fail;
        }
    }

    pub(crate) fn with_clause(mut self, label: impl Into<String>, value: f64, threshold: f64, pass: bool) -> Self {
        self.push(label, value, threshold, pass);
        self.finish()
    }

    pub fn passed(&self) -> bool {
        self.status != ReportStatus::Fail
    }
}

fn diff_norm(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

/// Checks every clause of Theorem 1 on the pair `(A, B)`: `S(A, B)` is
/// non-empty, `[A, B]` does not annihilate any member, and the witness is
/// nonzero on each member with both traces nonzero.
pub fn check_theorem1(a: &Projector, b: &Projector, cfg: &Config) -> Result<TheoremReport> {
    let c = commutator(a.matrix(), b.matrix())?;
    let comm_norm = c.frobenius_norm();
    if comm_norm <= cfg.tol_commute {
        return Ok(TheoremReport::vacuous(
            TheoremId::Theorem1,
            Clause {
                label: "hypothesis: ||[A,B]||_F > tol_commute".into(),
                value: comm_norm,
                threshold: cfg.tol_commute,
                pass: false,
            },
        ));
    }

    let mut report = TheoremReport::new(TheoremId::Theorem1);
    report.above("hypothesis: ||[A,B]||_F > tol_commute", comm_norm, cfg.tol_commute);
    let set = eigen_set(a, b, cfg)?;
    report.above("(1) |S(A,B)| > 0", set.len() as f64, 0.0);

    for (k, pair) in set.pairs.iter().enumerate() {
        let phi = pair.state.amplitudes();
        let cphi = norm(&c.apply(phi)?);
        let aphi = norm(&a.matrix().apply(phi)?);
        let bphi = norm(&b.matrix().apply(phi)?);
        report.above(format!("(2) phi_{k}: ||[A,B] phi|| > tol_null"), cphi, cfg.tol_null);
        report.above(format!("proof phi_{k}: ||A phi|| > tol_null"), aphi, cfg.tol_null);
        report.above(format!("proof phi_{k}: ||B phi|| > tol_null"), bphi, cfg.tol_null);

        let w = bks_witness_pure(&pair.state, a, b, cfg)?;
        report.push(
            format!("(3) phi_{k}: tr[DA], tr[DB] > tol_null"),
            w.tr_da.min(w.tr_db),
            cfg.tol_null,
            w.preconditions_met,
        );
        report.push(
            format!("(3) phi_{k}: |<phi|G|phi>| > tol_null"),
            w.witness.re,
            cfg.tol_null,
            w.bks_violated,
        );
        report.within(
            format!("proof phi_{k}: |<phi|G|phi> - lambda|"),
            (w.witness.re - pair.eigenvalue).abs(),
            cfg.tol_eig,
        );
    }
    Ok(report.finish())
}

/// Checks Theorem 2 for `phi` with the pair from [`theorem2_pair`]: the
/// witness is exactly 1/4, `[A, B] phi = -xi / 2`, and the intermediate
/// facts `B G phi = 0`, `<phi|AG|phi> = <phi|G|phi>` used in its proof.
pub fn check_theorem2(phi: &PureState, xi: Option<&PureState>, cfg: &Config) -> Result<TheoremReport> {
    let pair = theorem2_pair(phi, xi, cfg)?;
    let (a, b) = (pair.a.matrix(), pair.b.matrix());
    let p = pair.phi.amplitudes();
    let x = pair.xi.amplitudes();
    let g = compound_commutator(&pair.a, &pair.b, cfg)?.matrix;
    let c = commutator(a, b)?;
    let tol = cfg.tol_identity;

    let mut report = TheoremReport::new(TheoremId::Theorem2);

    let w = bks_witness_pure(&pair.phi, &pair.a, &pair.b, cfg)?;
    report.push(
        "(1) <phi|G|phi> = 1/4",
        w.witness.re,
        tol,
        (w.witness - C64::new(0.25, 0.0)).norm() <= tol,
    );

    let cphi = c.apply(p)?;
    let target: Vec<C64> = x.iter().map(|&z| -z * 0.5).collect();
    report.within("(2) ||[A,B] phi + xi/2||", diff_norm(&cphi, &target), tol);
    report.above("(2) ||[A,B] phi|| > tol_null", norm(&cphi), cfg.tol_null);

    let bphi = b.apply(p)?;
    let half_sum: Vec<C64> = p.iter().zip(x).map(|(&u, &v)| (u + v) * 0.5).collect();
    report.within("proof: ||B phi - (phi + xi)/2||", diff_norm(&bphi, &half_sum), tol);
    report.within("proof: ||A phi - phi||", diff_norm(&a.apply(p)?, p), tol);

    let bg = b * &g;
    let ag = a * &g;
    report.within("proof: |<phi|BG|phi>|", bg.expectation(p)?.norm(), tol);
    report.within(
        "proof: |<phi|AG|phi> - <phi|G|phi>|",
        (ag.expectation(p)? - g.expectation(p)?).norm(),
        tol,
    );

    report.push(
        "(3) tr[DA], tr[DB] > tol_null",
        w.tr_da.min(w.tr_db),
        cfg.tol_null,
        w.preconditions_met,
    );
    report.push("(3) witness nonzero", w.witness.re, cfg.tol_null, w.bks_violated);
    Ok(report.finish())
}

/// Checks Lemma 2 on an eigenvector `phi` of `G(A, B)`.
///
/// If `[A, B] phi != 0` the witness must be nonzero; if the witness
/// vanishes, `C^dag C phi` must vanish too (so `[A, B] phi = 0`).
pub fn check_lemma2(a: &Projector, b: &Projector, phi: &PureState, cfg: &Config) -> Result<TheoremReport> {
    let g = compound_commutator(a, b, cfg)?.matrix;
    let p = phi.amplitudes();
    let gphi = g.apply(p)?;
    let lambda = inner(p, &gphi);
    let scaled: Vec<C64> = p.iter().map(|&z| z * lambda).collect();
    let residual = diff_norm(&gphi, &scaled);
    if residual > cfg.tol_eig {
        return Err(Error::NotEigenvector { residual });
    }

    let c = commutator(a.matrix(), b.matrix())?;
    let cphi = norm(&c.apply(p)?);
    let ctc = &c.adjoint() * &c;
    let ctc_phi = norm(&ctc.apply(p)?);

    let mut report = TheoremReport::new(TheoremId::Lemma2);
    report.within("precondition: ||G phi - lambda phi||", residual, cfg.tol_eig);
    if cphi > cfg.tol_null {
        report.above("contrapositive: |<phi|G|phi>| > tol_null", lambda.norm(), cfg.tol_null);
    }
    if lambda.norm() <= cfg.tol_null {
        report.within("forward: ||C^dag C phi||", ctc_phi, cfg.tol_null);
        report.within("forward: ||[A,B] phi||", cphi, cfg.tol_null.sqrt());
    }
    Ok(report.finish())
}
