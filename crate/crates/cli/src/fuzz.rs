//! Randomized sweep of the library invariants.
//!
//! Instance `i` of a run with master seed `s` uses seed `s + i` (wrapping)
//! and nothing else, so a failure at instance `i` is reproduced alone by
//! `--count 1 --seed s+i`.

use bks::generators::eigen_set;
use bks::hidden::{sequential_consistency, sequential_lp};
use bks::linalg::{compound_commutator, hermitian_eig, verify_identity_2_2};
use bks::povm::{bbks_qubit_demo, validate_povm};
use bks::random::{random_density, random_projector, random_pure_state, substream_seed};
use bks::seqsim::run_order_test;
use bks::witness::{bks_witness, check_lemma2, check_theorem1, check_theorem2, Clause, ReportStatus, TheoremReport};
use bks::{Config, DensityOperator, MAX_DIM};
use serde::Serialize;
use serde_json::json;

use crate::commands::Context;
use crate::error::{CliError, Result};
use crate::report::{Report, Status};

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub instance: u64,
    pub reproduction_seed: u64,
    pub reproduce: String,
    pub check: String,
    pub evidence: String,
}

struct Sweep<'a> {
    cfg: &'a Config,
    checks: usize,
}

type Failure = (String, String);

impl Sweep<'_> {
    fn within(&mut self, label: &str, value: f64, threshold: f64) -> Result<(), Failure> {
        if value <= threshold {
            self.checks += 1;
            Ok(())
        } else {
            Err((label.into(), format!("value {value:.16e} exceeds {threshold:.16e}")))
        }
    }

    fn holds(&mut self, label: &str, ok: bool, evidence: impl FnOnce() -> String) -> Result<(), Failure> {
        if ok {
            self.checks += 1;
            Ok(())
        } else {
            Err((label.into(), evidence()))
        }
    }

    fn report(&mut self, label: &str, r: &TheoremReport) -> Result<(), Failure> {
        let first: Option<&Clause> = r.clauses.iter().find(|c| !c.pass);
        self.holds(label, r.passed(), || {
            let c = first.expect("failed report has a failing clause");
            format!(
                "clause `{}`: value {:.16e}, threshold {:.16e}",
                c.label, c.value, c.threshold
            )
        })
    }
}

fn step<T>(label: &str, r: bks::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| (label.to_string(), e.to_string()))
}

fn instance(dim: usize, seed: u64, cfg: &Config, sweep: &mut Sweep) -> Result<(), Failure> {
    let s = |k| substream_seed(seed, k);
    let ra = 1 + (s(0) % (dim as u64 - 1)) as usize;
    let rb = 1 + (s(1) % (dim as u64 - 1)) as usize;
    let a = step("construct A", random_projector(dim, ra, s(2), cfg))?;
    let b = step("construct B", random_projector(dim, rb, s(3), cfg))?;
    let phi = step("construct phi", random_pure_state(dim, s(4)))?;
    let mixed = step("construct D", random_density(dim, s(5), cfg))?;

    let identity = step("(A - B)[AB, BA] = C^dagger C", verify_identity_2_2(&a, &b))?;
    sweep.within("(A - B)[AB, BA] = C^dagger C", identity, cfg.tol_identity)?;
    let g = step("[AB, BA]", compound_commutator(&a, &b, cfg))?;
    let eig = step("spectrum of [AB, BA]", hermitian_eig(&g.matrix, cfg))?;
    sweep.within("eigen residual of [AB, BA]", eig.residual, cfg.tol_eig)?;
    sweep.within("eigenvector orthonormality", eig.gram_residual(), cfg.tol_eig)?;

    let t1 = step("theorem 1", check_theorem1(&a, &b, cfg))?;
    sweep.report("theorem 1", &t1)?;
    for p in step("eigen set", eigen_set(&a, &b, cfg))?.pairs {
        let l2 = step("lemma 2", check_lemma2(&a, &b, &p.state, cfg))?;
        sweep.report("lemma 2", &l2)?;
    }
    let t2 = step("theorem 2", check_theorem2(&phi, None, cfg))?;
    sweep.report("theorem 2", &t2)?;
    if dim == 2 {
        let demo = step("qubit POVM pair", bbks_qubit_demo(&phi, cfg))?;
        sweep.report("qubit POVM pair", &demo)?;
    }
    step(
        "{A, I - A} is a POVM",
        validate_povm(&[a.matrix().clone(), a.complement().matrix().clone()], cfg),
    )?;

    for (label, d) in [("pure", DensityOperator::from_pure(&phi)), ("mixed", mixed)] {
        let w = step("witness", bks_witness(&d, &a, &b, cfg))?;
        sweep.within(&format!("Im witness ({label})"), w.witness.im.abs(), cfg.tol_identity)?;
        let lp = step("sequential LP", sequential_consistency(&d, &a, &b, cfg))?;
        let infeasible = !lp.is_feasible();
        sweep.holds(
            &format!("sequential LP agrees with witness ({label})"),
            infeasible == (w.witness.norm() > cfg.tol_lp),
            || format!("witness {:.16e}, LP feasible {}", w.witness.re, lp.is_feasible()),
        )?;
        if let Some(y) = &lp.certificate {
            let model = step("sequential LP", sequential_lp(&d, &a, &b))?;
            sweep.holds(
                "Farkas certificate verified",
                model.verify_certificate(y, cfg.tol_lp),
                || format!("max y^T A_j = {:.16e}", lp.max_constraint_violation),
            )?;
        }
        let order = step("order test", run_order_test(&d, &a, &b, None, 0, cfg))?;
        sweep.within(
            &format!("S_AB - S_BA = witness ({label})"),
            (order.diff - w.witness.re).abs(),
            cfg.tol_identity,
        )?;
    }

    // Commuting control: A against its own complement.
    let ac = a.complement();
    let gc = step("[AB, BA] of commuting control", compound_commutator(&a, &ac, cfg))?;
    sweep.within(
        "commuting control: [AB, BA] = 0",
        gc.matrix.frobenius_norm(),
        cfg.tol_commute,
    )?;
    let set = step("eigen set of commuting control", eigen_set(&a, &ac, cfg))?;
    sweep.holds("commuting control: empty eigen set", set.is_empty(), || {
        format!("{} eigenvectors", set.len())
    })?;
    let t1c = step("theorem 1 on commuting control", check_theorem1(&a, &ac, cfg))?;
    sweep.holds(
        "commuting control: theorem 1 vacuous",
        t1c.status == ReportStatus::Vacuous,
        || format!("status {:?}", t1c.status),
    )?;
    Ok(())
}

/// Command line that reruns one instance, carrying any non-default
/// tolerance so the failure reappears.
fn reproduce_command(dim: usize, seed: u64, cfg: &Config) -> String {
    let mut cmd = format!("bks fuzz --dim {dim} --count 1 --seed {seed}");
    let default = Config::default();
    for (flag, v, d) in [
        ("--tol-identity", cfg.tol_identity, default.tol_identity),
        ("--tol-eig", cfg.tol_eig, default.tol_eig),
        ("--tol-commute", cfg.tol_commute, default.tol_commute),
        ("--tol-lp", cfg.tol_lp, default.tol_lp),
    ] {
        if v != d {
            cmd.push_str(&format!(" {flag} {v:e}"));
        }
    }
    cmd
}

pub fn fuzz(ctx: &Context, dim: usize, count: u64) -> Result<Report> {
    if count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(CliError::Usage(format!("--dim must lie in 2..={MAX_DIM}")));
    }
    let mut sweep = Sweep {
        cfg: &ctx.cfg,
        checks: 0,
    };
    let mut violation = None;
    let mut run = 0;
    for i in 0..count {
        let seed = ctx.seed.wrapping_add(i);
        run += 1;
        if let Err((check, evidence)) = instance(dim, seed, sweep.cfg, &mut sweep) {
            violation = Some(Violation {
                instance: i,
                reproduction_seed: seed,
                reproduce: reproduce_command(dim, seed, &ctx.cfg),
                check,
                evidence,
            });
            break;
        }
    }
    let status = if violation.is_some() {
        Status::Fail
    } else {
        Status::Pass
    };
    let cmd = json!({ "name": "fuzz", "dim": dim, "count": count });
    let results = json!({
        "instances_run": run,
        "checks_passed": sweep.checks,
        "violation": violation,
    });
    Ok(Report::new(cmd, &ctx.cfg, ctx.seed, results, status))
}
