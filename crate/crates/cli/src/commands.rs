//! One function per subcommand. Each reads its objects from the input
//! document, runs the library and wraps the result in a [`Report`].

use bks::generators::{eigen_set, theorem2_pair};
use bks::hidden::{
    build_lp, sequential_lp, solve_feasibility, ChshSettings, FeasibilityResult, HvScenario, LinearProgram,
    ScenarioObservable,
};
use bks::linalg::{commutator, compound_commutator};
use bks::seqsim::run_order_test;
use bks::witness::{bks_witness, check_theorem1, check_theorem2, Clause};
use bks::{Config, DensityOperator, Projector, PureState};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};
use crate::input::InputDocument;
use crate::report::{Report, Status};

/// Resolved configuration shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub cfg: Config,
    pub seed: u64,
}

impl Context {
    fn report(&self, command: Value, results: impl Serialize, status: Status) -> Report {
        Report::new(command, &self.cfg, self.seed, results, status)
    }
}

fn object_err(name: &str) -> impl Fn(bks::Error) -> CliError + '_ {
    move |source| CliError::Object {
        name: name.into(),
        source,
    }
}

pub(crate) fn projector(doc: &InputDocument, name: &str, cfg: &Config) -> Result<Projector> {
    Projector::new(doc.matrix(name)?, cfg).map_err(object_err(name))
}

fn pure_state(doc: &InputDocument, name: &str, cfg: &Config) -> Result<PureState> {
    PureState::new(doc.vector(name)?, cfg).map_err(object_err(name))
}

/// The state is a matrix `D` or a vector `phi`, never both.
fn state(doc: &InputDocument, cfg: &Config) -> Result<DensityOperator> {
    match (doc.get("D").is_some(), doc.get("phi").is_some()) {
        (true, true) => Err(CliError::Document("give either `D` or `phi`, not both".into())),
        (true, false) => DensityOperator::new(doc.matrix("D")?, cfg).map_err(object_err("D")),
        (false, true) => Ok(DensityOperator::from_pure(&pure_state(doc, "phi", cfg)?)),
        (false, false) => Err(CliError::Document(
            "missing state: a matrix `D` or a vector `phi`".into(),
        )),
    }
}

fn clause(label: &str, value: f64, threshold: f64, pass: bool) -> Clause {
    Clause {
        label: label.into(),
        value,
        threshold,
        pass,
    }
}

fn within(label: &str, value: f64, threshold: f64) -> Clause {
    clause(label, value, threshold, value <= threshold)
}

fn status_of(clauses: &[Clause]) -> Status {
    if clauses.iter().all(|c| c.pass) {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn command(name: &str, file: &str) -> Value {
    json!({ "name": name, "file": file })
}

pub fn verify_identity(ctx: &Context, file: &str, doc: &InputDocument) -> Result<Report> {
    let cfg = &ctx.cfg;
    let (a, b) = (projector(doc, "A", cfg)?, projector(doc, "B", cfg)?);
    let identity = bks::linalg::verify_identity_2_2(&a, &b)?;
    // Residuals are reported, not enforced, so that a failure is evidence
    // rather than an error.
    let loose = Config {
        tol_identity: f64::INFINITY,
        ..*cfg
    };
    let g = compound_commutator(&a, &b, &loose)?;
    let clauses = vec![
        within("(A - B)[AB, BA] = [A, B]^dagger [A, B]", identity, cfg.tol_identity),
        within("[AB, BA] Hermitian", g.hermiticity_residual, cfg.tol_identity),
        within("ABA - BAB = [AB, BA]", g.form_residual, cfg.tol_identity),
    ];
    let status = status_of(&clauses);
    let results = json!({
        "identity_residual": identity,
        "hermiticity_residual": g.hermiticity_residual,
        "form_residual": g.form_residual,
        "commutator_norm": commutator(a.matrix(), b.matrix())?.frobenius_norm(),
        "compound_commutator_norm": g.matrix.frobenius_norm(),
        "clauses": clauses,
    });
    Ok(ctx.report(command("verify-identity", file), results, status))
}

pub fn witness(ctx: &Context, file: &str, doc: &InputDocument) -> Result<Report> {
    let cfg = &ctx.cfg;
    let (a, b) = (projector(doc, "A", cfg)?, projector(doc, "B", cfg)?);
    let d = state(doc, cfg)?;
    let w = bks_witness(&d, &a, &b, cfg)?;
    let clauses = vec![
        within("Im witness = 0", w.witness.im.abs(), cfg.tol_identity),
        within(
            "witness = tr[DABA] - tr[DBAB]",
            (w.witness.re - w.trace_difference).abs(),
            cfg.tol_identity,
        ),
    ];
    let status = status_of(&clauses);
    let results = json!({
        "witness": w,
        "inconclusive": w.inconclusive(),
        "clauses": clauses,
    });
    Ok(ctx.report(command("witness", file), results, status))
}

pub fn theorem1(ctx: &Context, file: &str, doc: &InputDocument) -> Result<Report> {
    let cfg = &ctx.cfg;
    let (a, b) = (projector(doc, "A", cfg)?, projector(doc, "B", cfg)?);
    let report = check_theorem1(&a, &b, cfg)?;
    let set = eigen_set(&a, &b, cfg)?;
    let eigenvalues: Vec<f64> = set.pairs.iter().map(|p| p.eigenvalue).collect();
    let status = report.status.into();
    let results = json!({ "eigenvalues": eigenvalues, "report": report });
    Ok(ctx.report(command("theorem1", file), results, status))
}

pub fn theorem2(ctx: &Context, file: &str, doc: &InputDocument) -> Result<Report> {
    let cfg = &ctx.cfg;
    let phi = pure_state(doc, "phi", cfg)?;
    let xi = match doc.get("xi") {
        Some(_) => Some(pure_state(doc, "xi", cfg)?),
        None => None,
    };
    let pair = theorem2_pair(&phi, xi.as_ref(), cfg)?;
    let report = check_theorem2(&phi, xi.as_ref(), cfg)?;
    let status = report.status.into();
    let results = json!({
        "witness": report.clauses[0].value,
        "xi": pair.xi,
        "report": report,
    });
    Ok(ctx.report(command("theorem2", file), results, status))
}

/// LP rows, columns and right-hand side, the solver result and an
/// independent check of whichever of distribution or certificate came back.
fn lp_results(lp: &LinearProgram, columns: Vec<String>, cfg: &Config) -> Result<(Value, Clause)> {
    let result: FeasibilityResult = solve_feasibility(lp, cfg)?;
    let check = match (&result.distribution, &result.certificate) {
        (Some(x), _) => within("distribution satisfies every row", lp.violation(x), cfg.tol_lp),
        (_, Some(y)) => {
            let ok = lp.verify_certificate(y, cfg.tol_lp);
            clause(
                "Farkas certificate verified",
                result.max_constraint_violation,
                cfg.tol_lp,
                ok,
            )
        }
        _ => unreachable!("solver returns one of the two"),
    };
    let table: Option<Vec<Value>> = result.distribution.as_ref().map(|x| {
        x.iter()
            .zip(&columns)
            .filter(|(&p, _)| p > cfg.tol_lp)
            .map(|(&p, label)| json!({ "assignment": label, "probability": p }))
            .collect()
    });
    let value = json!({
        "lp": {
            "n_vars": lp.n_vars,
            "n_rows": lp.n_rows(),
            "columns": columns,
            "row_labels": lp.row_labels,
            "rows": lp.rows,
            "rhs": lp.rhs,
        },
        "result": result,
        "distribution_table": table,
    });
    Ok((value, check))
}

/// Eigenvalues come out of an iterative solver; labels show them rounded
/// to ten decimals. The exact values are in the scenario summary.
fn label_value(v: f64) -> f64 {
    let r = (v * 1e10).round() / 1e10;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn scenario_columns(s: &HvScenario) -> Vec<String> {
    (0..s.assignment_count())
        .map(|k| {
            s.assignment(k)
                .iter()
                .zip(&s.observables)
                .map(|(&v, o)| format!("{}={}", o.id, label_value(o.spectrum[v].value)))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect()
}

fn scenario_summary(s: &HvScenario) -> Value {
    let observables: Vec<Value> = s
        .observables
        .iter()
        .map(|o| json!({ "id": o.id, "outcomes": o.spectrum.iter().map(|c| c.value).collect::<Vec<_>>() }))
        .collect();
    let pairs: Vec<[&str; 2]> = s
        .commuting_pairs
        .iter()
        .map(|&(i, j)| [s.observables[i].id.as_str(), s.observables[j].id.as_str()])
        .collect();
    json!({ "observables": observables, "commuting_pairs": pairs })
}

fn solve_scenario(s: &HvScenario, cfg: &Config) -> Result<(Value, Clause)> {
    let (mut value, check) = lp_results(&build_lp(s)?, scenario_columns(s), cfg)?;
    value["scenario"] = scenario_summary(s);
    Ok((value, check))
}

pub fn hv_lp(ctx: &Context, file: &str, doc: &InputDocument) -> Result<Report> {
    let cfg = &ctx.cfg;
    let d = state(doc, cfg)?;
    let observables = doc
        .objects
        .iter()
        .filter(|o| o.kind == crate::input::ObjectKind::Matrix && o.name != "D")
        .map(|o| ScenarioObservable::new(o.name.clone(), doc.matrix(&o.name)?, cfg).map_err(object_err(&o.name)))
        .collect::<Result<Vec<_>>>()?;
    let scenario = HvScenario::new(d, observables, cfg)?;
    let (results, check) = solve_scenario(&scenario, cfg)?;
    let status = status_of(std::slice::from_ref(&check));
    let mut results = results;
    results["clauses"] = json!([check]);
    Ok(ctx.report(command("hv-lp", file), results, status))
}

pub fn chsh(ctx: &Context, file: &str, doc: &InputDocument) -> Result<Report> {
    let cfg = &ctx.cfg;
    let d = state(doc, cfg)?;
    let settings = ChshSettings {
        a1: doc.matrix("a1")?,
        a2: doc.matrix("a2")?,
        b1: doc.matrix("b1")?,
        b2: doc.matrix("b2")?,
    };
    let correlators = settings.correlators(&d, cfg)?;
    let combinations = settings.combinations(&d, cfg)?;
    let value = settings.value(&d, cfg)?;
    let (mut results, check) = solve_scenario(&settings.scenario(&d, cfg)?, cfg)?;
    let max_combination = combinations.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let violates = max_combination > 2.0 + cfg.tol_lp;
    let feasible = results["result"]["status"] == "feasible";
    // A hidden-variable model exists iff no CHSH expression exceeds 2; at
    // the boundary itself the two tests may legitimately disagree.
    let agree = feasible != violates || (max_combination - 2.0).abs() <= cfg.tol_lp.sqrt();
    let clauses = vec![
        check,
        clause(
            "LP feasibility agrees with the eight CHSH inequalities",
            max_combination,
            2.0,
            agree,
        ),
    ];
    let status = status_of(&clauses);
    let summary = json!({
        "chsh": value,
        "correlators": correlators,
        "combinations": combinations,
        "max_combination": max_combination,
        "classical_bound": 2.0,
        "quantum_bound": 2.0 * std::f64::consts::SQRT_2,
        "violates_classical_bound": violates,
    });
    let mut merged = Map::new();
    if let (Value::Object(s), Value::Object(r)) = (summary, std::mem::take(&mut results)) {
        merged.extend(s);
        merged.extend(r);
    }
    merged.insert("clauses".into(), json!(clauses));
    Ok(ctx.report(command("chsh", file), Value::Object(merged), status))
}

pub fn seq(ctx: &Context, file: &str, doc: &InputDocument, samples: Option<usize>) -> Result<Report> {
    let cfg = &ctx.cfg;
    let (a, b) = (projector(doc, "A", cfg)?, projector(doc, "B", cfg)?);
    let d = state(doc, cfg)?;
    let order = run_order_test(&d, &a, &b, samples, ctx.seed, cfg)?;
    let columns = ["A=0, B=0", "A=0, B=1", "A=1, B=0", "A=1, B=1"]
        .map(String::from)
        .to_vec();
    let (lp, check) = lp_results(&sequential_lp(&d, &a, &b)?, columns, cfg)?;
    let clauses = vec![
        within(
            "S_AB - S_BA = witness",
            (order.diff - order.witness).abs(),
            cfg.tol_identity,
        ),
        check,
    ];
    let status = status_of(&clauses);
    let mut cmd = command("seq", file);
    cmd["n"] = json!(samples);
    let results = json!({ "order_test": order, "sequential_lp": lp, "clauses": clauses });
    Ok(ctx.report(cmd, results, status))
}
