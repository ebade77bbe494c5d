use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bks::random::{random_projector, random_pure_state};
use bks::{Config, PureState, SquareMatrix, C64};
use bks_cli::input::{InputDocument, Object};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn bks(args: &[&str]) -> Run {
    bks_env(args, None)
}

fn bks_env(args: &[&str], config: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bks"));
    cmd.args(args).env_remove("BKS_CONFIG");
    if let Some(p) = config {
        cmd.env("BKS_CONFIG", p);
    }
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    Run {
        code: status.code().unwrap(),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn doc_file(dir: &TempDir, name: &str, objects: Vec<Object>) -> String {
    write(dir, name, &InputDocument::new(objects).to_json())
        .to_str()
        .unwrap()
        .to_owned()
}

fn real(dim: usize, v: &[f64]) -> SquareMatrix {
    SquareMatrix::from_real(dim, v).unwrap()
}

fn canonical() -> Vec<Object> {
    vec![
        Object::matrix("A", &real(2, &[1.0, 0.0, 0.0, 0.0])),
        Object::matrix("B", &real(2, &[0.5, 0.5, 0.5, 0.5])),
        Object::vector("phi", &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
    ]
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

/// Every non-integer number token must carry 17 significant digits.
fn assert_seventeen_digits(json: &str) {
    let mut in_string = false;
    let mut escaped = false;
    let mut token = String::new();
    for ch in json.chars().chain(std::iter::once(' ')) {
        if in_string {
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
            continue;
        }
        if ch == '"' {
            in_string = true;
        } else if ch.is_ascii_digit() || (ch == '-' && token.is_empty()) || (!token.is_empty() && "+-.eE".contains(ch))
        {
            token.push(ch);
            continue;
        }
        if !token.is_empty() && (token.contains('.') || token.contains('e')) {
            let mantissa = token.trim_start_matches('-').split('e').next().unwrap();
            let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).count();
            assert_eq!(digits, 17, "float token {token}");
        }
        token.clear();
    }
}

#[test]
fn verify_identity_canonical_pair() {
    let dir = TempDir::new().unwrap();
    let file = doc_file(&dir, "c.json", canonical());
    let r = bks(&["verify-identity", &file]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(f(&v["results"]["identity_residual"]), 0.0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["command"]["name"], "verify-identity");
    assert_seventeen_digits(&r.stdout);
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.json", "{\"schema_version\": 1, \"objects\": [");
    let r = bks(&["verify-identity", file.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("malformed"));
    assert_eq!(bks(&["witness", "/nonexistent/file.json"]).code, 2);
}

#[test]
fn strict_document_rules() {
    let dir = TempDir::new().unwrap();
    let cases = [
        r#"{"schema_version":1,"objects":[],"extra":0}"#,
        r#"{"schema_version":2,"objects":[]}"#,
        r#"{"schema_version":1,"objects":[{"name":"A","kind":"matrix","dim":2,"entries":[[1,0]]}]}"#,
        r#"{"schema_version":1,"objects":[{"name":"A","kind":"tensor","dim":1,"entries":[[1,0]]}]}"#,
        r#"{"schema_version":1,"objects":[{"name":"A","kind":"vector","dim":1,"entries":[[1,0,0]]}]}"#,
        r#"{"schema_version":1,"objects":[{"name":"A","kind":"vector","dim":1,"entries":[[1e999,0]]}]}"#,
        r#"{"schema_version":1,"objects":[{"name":"A","kind":"vector","dim":1,"entries":[[1,0]]},{"name":"A","kind":"vector","dim":1,"entries":[[1,0]]}]}"#,
    ];
    for (k, text) in cases.iter().enumerate() {
        let file = write(&dir, &format!("{k}.json"), text);
        let r = bks(&["theorem1", file.to_str().unwrap()]);
        assert_eq!(r.code, 2, "case {k}: {}", r.stderr);
        assert!(r.stdout.is_empty());
    }
}

#[test]
fn near_projector_is_rejected() {
    let dir = TempDir::new().unwrap();
    // diag(1 + 1e-6, 0): idempotence residual about 2e-6
    let mut objects = canonical();
    objects[0] = Object::matrix("A", &real(2, &[1.0 + 1e-6, 0.0, 0.0, 0.0]));
    let file = doc_file(&dir, "near.json", objects);
    let r = bks(&["verify-identity", &file]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("object `A`"), "{}", r.stderr);
}

#[test]
fn theorem2_on_random_state_prints_a_quarter() {
    let dir = TempDir::new().unwrap();
    let phi = random_pure_state(5, 11).unwrap();
    let file = doc_file(&dir, "t2.json", vec![Object::vector("phi", phi.amplitudes())]);
    let r = bks(&["theorem2", &file]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert!((f(&v["results"]["witness"]) - 0.25).abs() <= 1e-12);
    assert_eq!(v["results"]["report"]["theorem"], "theorem2");
    assert_eq!(v["status"], "pass");
    assert_seventeen_digits(&r.stdout);
}

#[test]
fn theorem2_with_explicit_xi() {
    let dir = TempDir::new().unwrap();
    let z = C64::new(0.0, 0.0);
    let objects = vec![
        Object::vector("phi", &[C64::new(1.0, 0.0), z, z]),
        Object::vector("xi", &[z, z, C64::new(0.0, 1.0)]),
    ];
    let r = bks(&["theorem2", &doc_file(&dir, "xi.json", objects)]);
    assert_eq!(r.code, 0);
    let xi = &r.json()["results"]["xi"];
    assert_eq!(xi[2], serde_json::json!([0.0, 1.0]));

    // xi not orthogonal to phi
    let objects = vec![
        Object::vector("phi", &[C64::new(1.0, 0.0), z]),
        Object::vector("xi", &[C64::new(1.0, 0.0), z]),
    ];
    assert_eq!(bks(&["theorem2", &doc_file(&dir, "bad.json", objects)]).code, 2);
}

#[test]
fn theorem1_on_commuting_pair_is_vacuous() {
    let dir = TempDir::new().unwrap();
    let objects = vec![
        Object::matrix("A", &real(2, &[1.0, 0.0, 0.0, 0.0])),
        Object::matrix("B", &real(2, &[0.0, 0.0, 0.0, 1.0])),
    ];
    let r = bks(&["theorem1", &doc_file(&dir, "comm.json", objects)]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["status"], "vacuous");
    assert_eq!(v["results"]["eigenvalues"], serde_json::json!([]));
}

#[test]
fn theorem1_on_random_pair_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = Config::default();
    let objects = vec![
        Object::matrix("A", random_projector(6, 2, 1, &cfg).unwrap().matrix()),
        Object::matrix("B", random_projector(6, 3, 2, &cfg).unwrap().matrix()),
    ];
    let r = bks(&["theorem1", &doc_file(&dir, "rand.json", objects)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["status"], "pass");
    assert!(!v["results"]["eigenvalues"].as_array().unwrap().is_empty());
}

#[test]
fn witness_on_product_composite() {
    let dir = TempDir::new().unwrap();
    let cfg = Config::default();
    let phi = PureState::basis(2, 0).unwrap();
    let pair = bks::generators::theorem2_pair(&phi, None, &cfg).unwrap();
    let p0 = bks::Projector::from_state(&PureState::basis(2, 0).unwrap(), &cfg).unwrap();
    let a = pair.a.tensor(&p0).unwrap();
    let b = pair.b.tensor(&p0).unwrap();
    let psi = phi.tensor(&PureState::basis(2, 0).unwrap()).unwrap();
    let objects = vec![
        Object::matrix("A", a.matrix()),
        Object::matrix("B", b.matrix()),
        Object::vector("phi", psi.amplitudes()),
    ];
    let r = bks(&["witness", &doc_file(&dir, "prod.json", objects)]);
    assert_eq!(r.code, 0);
    let w = &r.json()["results"]["witness"];
    assert!((f(&w["witness"][0]) - 0.25).abs() <= 1e-12);
    assert_eq!(w["bks_violated"], true);

    // D instead of phi gives the same witness
    let objects = vec![
        Object::matrix("A", a.matrix()),
        Object::matrix("B", b.matrix()),
        Object::matrix("D", &psi.projector_matrix()),
    ];
    let r = bks(&["witness", &doc_file(&dir, "prod_d.json", objects)]);
    assert!((f(&r.json()["results"]["witness"]["witness"][0]) - 0.25).abs() <= 1e-12);
}

#[test]
fn state_must_be_unambiguous() {
    let dir = TempDir::new().unwrap();
    let mut objects = canonical();
    objects.push(Object::matrix("D", &real(2, &[1.0, 0.0, 0.0, 0.0])));
    assert_eq!(bks(&["witness", &doc_file(&dir, "both.json", objects)]).code, 2);
    let objects = canonical()[..2].to_vec();
    assert_eq!(bks(&["witness", &doc_file(&dir, "none.json", objects)]).code, 2);
}

fn chsh_objects(state: &[f64]) -> Vec<Object> {
    let amps: Vec<C64> = state.iter().map(|&x| C64::new(x, 0.0)).collect();
    let obs = |t: f64| real(2, &[t.cos(), t.sin(), t.sin(), -t.cos()]);
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    vec![
        Object::vector("phi", &amps),
        Object::matrix("a1", &obs(0.0)),
        Object::matrix("a2", &obs(FRAC_PI_2)),
        Object::matrix("b1", &obs(PI + FRAC_PI_4)),
        Object::matrix("b2", &obs(PI - FRAC_PI_4)),
    ]
}

#[test]
fn chsh_singlet_is_infeasible_with_certificate() {
    let dir = TempDir::new().unwrap();
    let s = 0.5f64.sqrt();
    let r = bks(&[
        "chsh",
        &doc_file(&dir, "singlet.json", chsh_objects(&[0.0, s, -s, 0.0])),
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = &r.json()["results"];
    assert!((f(&v["chsh"]) - 2.0 * 2f64.sqrt()).abs() <= 1e-12);
    assert!(r.stdout.contains("\"chsh\": 2.8284271"));
    assert_eq!(v["result"]["status"], "infeasible");
    assert_eq!(v["lp"]["n_rows"], 25);
    assert_eq!(v["lp"]["n_vars"], 16);
    assert_eq!(v["result"]["certificate"].as_array().unwrap().len(), 25);
    assert_eq!(v["violates_classical_bound"], true);
    assert!(v["clauses"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_seventeen_digits(&r.stdout);
}

#[test]
fn chsh_product_state_is_feasible_with_table() {
    let dir = TempDir::new().unwrap();
    let r = bks(&[
        "chsh",
        &doc_file(&dir, "prod.json", chsh_objects(&[1.0, 0.0, 0.0, 0.0])),
    ]);
    assert_eq!(r.code, 0);
    let v = &r.json()["results"];
    assert_eq!(v["result"]["status"], "feasible");
    let table = v["distribution_table"].as_array().unwrap();
    let total: f64 = table.iter().map(|row| f(&row["probability"])).sum();
    assert!((total - 1.0).abs() <= 1e-9);
    assert!(table[0]["assignment"].as_str().unwrap().starts_with("A1="));
}

#[test]
fn chsh_dimension_mismatch_is_input_error() {
    let dir = TempDir::new().unwrap();
    let r = bks(&["chsh", &doc_file(&dir, "q.json", chsh_objects(&[1.0, 0.0]))]);
    assert_eq!(r.code, 2);
}

#[test]
fn hv_lp_uses_every_other_matrix() {
    let dir = TempDir::new().unwrap();
    // Z, X and Z again on a qubit: one commuting pair
    let objects = vec![
        Object::matrix("Z", &real(2, &[1.0, 0.0, 0.0, -1.0])),
        Object::vector("phi", &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
        Object::matrix("X", &real(2, &[0.0, 1.0, 1.0, 0.0])),
        Object::matrix("Z2", &real(2, &[1.0, 0.0, 0.0, -1.0])),
    ];
    let r = bks(&["hv-lp", &doc_file(&dir, "hv.json", objects)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = &r.json()["results"];
    let ids: Vec<&str> = v["scenario"]["observables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["Z", "X", "Z2"]);
    assert_eq!(v["scenario"]["commuting_pairs"], serde_json::json!([["Z", "Z2"]]));
    // 1 + 6 marginals + 4 joint rows, 8 assignments
    assert_eq!(v["lp"]["n_rows"], 11);
    assert_eq!(v["lp"]["columns"][0], "Z=-1, X=-1, Z2=-1");
    assert_eq!(v["result"]["status"], "feasible");

    let only_state = vec![Object::vector("phi", &[C64::new(1.0, 0.0)])];
    assert_eq!(bks(&["hv-lp", &doc_file(&dir, "empty.json", only_state)]).code, 2);
}

#[test]
fn seq_exact_and_reproducible() {
    let dir = TempDir::new().unwrap();
    let file = doc_file(&dir, "c.json", canonical());
    let r = bks(&["seq", &file]);
    assert_eq!(r.code, 0);
    let v = &r.json()["results"]["order_test"];
    assert_eq!(f(&v["s_ab"]), 0.5);
    assert_eq!(f(&v["s_ba"]), 0.25);
    assert!(v["monte_carlo"].is_null());

    let args = ["seq", file.as_str(), "--n", "20000", "--seed", "99"];
    let (r1, r2) = (bks(&args), bks(&args));
    assert_eq!(r1.code, 0);
    assert_eq!(r1.stdout, r2.stdout);
    let mc = &r1.json()["results"]["order_test"]["monte_carlo"];
    assert_eq!(mc["n"], 20000);
    assert!((f(&mc["est_ab"]) - 0.5).abs() < 0.02);
    let other = bks(&["seq", file.as_str(), "--n", "20000", "--seed", "100"]);
    assert_ne!(r1.stdout, other.stdout);

    assert_eq!(bks(&["seq", &file, "--n", "5"]).code, 2);
}

#[test]
fn fuzz_regression_passes() {
    let r = bks(&["fuzz", "--dim", "4", "--count", "100", "--seed", "7"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["results"]["instances_run"], 100);
    assert!(v["results"]["violation"].is_null());
    assert_eq!(bks(&["fuzz", "--dim", "2", "--count", "20"]).code, 0);
}

#[test]
fn fuzz_usage_errors() {
    assert_eq!(bks(&["fuzz", "--count", "0"]).code, 2);
    assert_eq!(bks(&["fuzz", "--dim", "1"]).code, 2);
    assert_eq!(bks(&["fuzz", "--dim", "65"]).code, 2);
    assert_eq!(bks(&["fuzz", "--dim", "x"]).code, 2);
}

#[test]
fn fuzz_tiny_tolerance_reports_evidence() {
    let r = bks(&["fuzz", "--count", "5", "--seed", "3", "--tol-identity", "1e-30"]);
    assert_eq!(r.code, 1);
    let v = r.json();
    let viol = &v["results"]["violation"];
    assert_eq!(viol["reproduction_seed"], 3);
    assert!(!viol["evidence"].as_str().unwrap().is_empty());
    let cmd = viol["reproduce"].as_str().unwrap();
    assert!(cmd.contains("--tol-identity 1e-30"), "{cmd}");

    // the reproduction command fails the same way on its own
    let args: Vec<&str> = cmd.split_whitespace().skip(1).collect();
    let again = bks(&args);
    assert_eq!(again.code, 1);
    assert_eq!(again.json()["results"]["violation"]["check"], viol["check"]);
}

#[test]
fn config_file_and_overrides() {
    let dir = TempDir::new().unwrap();
    let file = doc_file(&dir, "c.json", canonical());
    let cfg = write(&dir, "cfg.json", r#"{"tol_lp": 1e-7, "tol_eig": 1e-11}"#);
    let r = bks_env(&["seq", &file, "--tol-lp", "1e-6"], Some(&cfg));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let c = &r.json()["config"];
    assert_eq!(f(&c["tol_lp"]), 1e-6);
    assert_eq!(f(&c["tol_eig"]), 1e-11);
    assert_eq!(f(&c["tol_identity"]), 1e-12);

    let bad = write(&dir, "bad.json", r#"{"tol_typo": 1}"#);
    assert_eq!(bks_env(&["seq", &file], Some(&bad)).code, 2);
    assert_eq!(bks(&["seq", &file, "--tol-lp", "-1"]).code, 2);
    assert_eq!(bks(&["seq", &file, "--tol-lp", "0"]).code, 2);
}

#[test]
fn text_format() {
    let dir = TempDir::new().unwrap();
    let file = doc_file(&dir, "c.json", canonical());
    let r = bks(&["witness", &file, "--format", "text"]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .contains("results.witness.witness[0] = 2.5000000000000000e-1\n"));
    assert!(r.stdout.ends_with("status = pass\n"));
}
