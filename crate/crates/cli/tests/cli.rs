use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-speedup"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("LATTICE_SPEEDUP_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn single_cell_table() {
    let o = run(&["tables", "--D", "1", "--K", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "D,K,T_1\n1,1,1.86793\n");
}

#[test]
fn malformed_range_is_a_usage_error() {
    assert_eq!(run(&["tables", "--D", "1..x"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "--D", "3..1"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "--bogus"]).status.code(), Some(2));
}

#[test]
fn invalid_schedule_is_a_usage_error() {
    let o = run(&["simulate", "--profile", "0,3", "--alpha", "0.6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn disjoint_singletons_need_two_sets() {
    let f = scratch("singletons.json");
    fs::write(&f, r#"{"n": 2, "D": 1, "sets": [[1], [2]]}"#).unwrap();
    for solver in ["dp", "pairs", "brute"] {
        let o = run(&["smc", "--instance", f.to_str().unwrap(), "--solver", solver]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(json(&o)["k"], 2, "{solver}");
    }
}

#[test]
fn uncovered_element_is_infeasible() {
    let f = scratch("uncovered.json");
    fs::write(&f, r#"{"n": 3, "D": 2, "sets": [[1, 2]]}"#).unwrap();
    let o = run(&["smc", "--instance", f.to_str().unwrap()]);
    assert_eq!(json(&o)["infeasible"], true);
}

#[test]
fn unknown_instance_keys_are_rejected() {
    let f = scratch("extra.json");
    fs::write(&f, r#"{"n": 2, "D": 1, "sets": [[1], [2]], "weights": [1, 1]}"#).unwrap();
    assert_eq!(run(&["smc", "--instance", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn two_digit_square_coefficient() {
    // (1 + x + x^2)^2 has x^2 coefficient 3
    let o = run(&["coeff", "--profile", "0,0,2", "--W", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["coefficient"], "3");
    assert_eq!(v["upper_bound_holds"], true);
}

#[test]
fn quarter_constants() {
    let o = run(&["bounds", "--alpha", "0.25", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0.664554") && out.contains("0.278279"), "{out}");
}

#[test]
fn published_block_mismatch_fails_verification() {
    assert_eq!(run(&["appendix", "--D", "1..5", "--verify"]).status.code(), Some(0));
    assert_eq!(run(&["appendix", "--D", "6", "--verify"]).status.code(), Some(1));
}

#[test]
fn path_instances() {
    let f = scratch("square.json");
    fs::write(&f, r#"{"d": [1, 1], "edges": [[0, 0], [2, 1]]}"#).unwrap();
    let v = json(&run(&["path", "--instance", f.to_str().unwrap()]));
    assert_eq!(v["reachable"], true);
    let g = scratch("blocked.json");
    fs::write(&g, r#"{"d": [1, 1], "edges": [[0, 0]]}"#).unwrap();
    assert_eq!(json(&run(&["path", "--instance", g.to_str().unwrap()]))["reachable"], false);
}

#[test]
fn csv_gets_a_json_sidecar() {
    let out = scratch("grid.csv");
    let o = run(&["tables", "--D", "1..2", "--K", "1", "--restarts", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("D,K,T_1,T_2\n1,1,1.86793,\n"), "{csv}");
    let side: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    let t = side["cells"][0]["T_D"].as_f64().unwrap();
    assert!((t - 1.86793).abs() < 1e-5);
}

#[test]
fn reruns_and_thread_counts_are_byte_identical() {
    let args = ["tables", "--D", "1..3", "--K", "1..2", "--restarts", "4", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    let c = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let args = ["tables", "--D", "2", "--K", "1", "--restarts", "3", "--format", "json"];
    let env = bin().args(args).env("LATTICE_SPEEDUP_SEED", "7").output().unwrap();
    let flag = run(&[&args[..], &["--seed", "7"]].concat());
    assert_eq!(env.stdout, flag.stdout);
}

#[test]
fn simulate_reports_ansatz_ratio() {
    let o = run(&["simulate", "--profile", "0,6", "--alpha", "0.3;0.4", "--T", "1.8"]);
    let v = json(&o);
    let total = v["total"].as_f64().unwrap();
    let ansatz = v["ansatz"]["value"].as_f64().unwrap();
    assert!((ansatz - 1.8f64.powi(6)).abs() < 1e-9);
    assert!((v["ansatz"]["ratio"].as_f64().unwrap() - total / ansatz).abs() < 1e-12);
    let naive = json(&run(&["simulate", "--profile", "0,6", "--alpha", "0.3;0.4", "--naive"]));
    let n = naive["total"].as_f64().unwrap();
    assert!((n - total).abs() <= 1e-9 * total);
}
