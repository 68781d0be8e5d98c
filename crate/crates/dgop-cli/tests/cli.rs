use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dgop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgop")).args(args).env_remove("DGOP_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = dgop(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dgop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn cobar_check_reports_ok() {
    let o = dgop(&["cobar-check", "--cooperad", "coLie", "--max-arity", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("d²=0: OK"));
}

#[test]
fn h0_m0_is_comm() {
    let v = json(&["h0", "--m", "0", "--max-arity", "5"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["result"]["quotient"], serde_json::json!([1, 1, 1, 1, 1]));
}

#[test]
fn h0_basis_lists_the_generator_orbit() {
    let v = json(&["h0", "--m", "1", "--basis"]);
    assert_eq!(v["result"]["quotient"], serde_json::json!([1, 2, 6, 23]));
    assert_eq!(v["result"]["ideal_bases"]["4"].as_array().unwrap().len(), 1);
}

#[test]
fn x_square_has_three_terms() {
    let v = json(&["conv-eval", "--element", "x^2", "--at", "Delta4"]);
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 3);
    let at = json(&["conv-eval", "--element", "x*x", "--at", "Δ3"]);
    assert_eq!(at["result"]["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["conv-eval", "--element", "random", "--at", "Delta3", "--operad", "p1", "--seed", "7", "--format", "json"];
    let (a, b) = (dgop(&args), dgop(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut other = args;
    other[8] = "8";
    assert_ne!(dgop(&other).stdout, a.stdout);
}

#[test]
fn degeneracy_generator_scalar() {
    let v = json(&["degeneracy-gen", "--m", "1"]);
    assert_eq!(v["result"]["scalar_to_x_power"], "4");
    assert_eq!(v["result"]["terms"], 12);
}

#[test]
fn exit_codes() {
    assert_eq!(dgop(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(dgop(&["h0", "--m", "0", "--max-arity", "1"]).status.code(), Some(2));
    let o = dgop(&["conv-eval", "--element", "x^3", "--at", "Delta4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("arity"));
    assert_eq!(dgop(&["degeneracy-ideal", "--algebra", "nope", "--m", "0"]).status.code(), Some(1));
}

#[test]
fn workers_variable() {
    let bin = env!("CARGO_BIN_EXE_dgop");
    let ok = Command::new(bin).args(["h0", "--m", "0"]).env("DGOP_WORKERS", "2").output().unwrap();
    assert!(ok.status.success());
    let bad = Command::new(bin).args(["h0", "--m", "0"]).env("DGOP_WORKERS", "0").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn poisson_algebra_from_toml_and_json() {
    let toml = scratch(
        "sl2.toml",
        r#"variables = ["x", "y", "z"]
brackets = [["x", "y", "z"], ["y", "z", "x"], ["z", "x", "y"]]
degree_cap = 4
"#,
    );
    let v = json(&["degeneracy-ideal", "--input", toml.to_str().unwrap(), "--m", "0", "--compare"]);
    assert_eq!(v["result"]["ideal"]["generators"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["comparison"]["equal"], true);

    let plane = scratch("plane.json", r#"{"variables": ["p", "q"], "brackets": [["p", "q", "1"]]}"#);
    let v = json(&["degeneracy-ideal", "--input", plane.to_str().unwrap(), "--m", "0"]);
    assert_eq!(v["result"]["ideal"]["generators"], serde_json::json!(["1"]));
}

#[test]
fn lie_algebra_from_json() {
    let f = scratch("aff.json", r#"{"names": ["a", "b"], "brackets": [["a", "b", {"a": "1"}]]}"#);
    let v = json(&["vanishing-locus", "--input", f.to_str().unwrap(), "--sym-cap", "2"]);
    assert_eq!(v["result"]["reduced_homology"], serde_json::json!({"1": 1, "2": 0}));
    let sl2 = json(&["vanishing-locus", "--algebra", "sl2", "--sym-cap", "3"]);
    assert_eq!(sl2["result"]["table"]["homology_generators"], serde_json::json!({"-2": 1}));
}

#[test]
fn golden_replays_and_regenerates() {
    let o = dgop(&["golden"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("golden: PASS"));
    let path = std::env::temp_dir().join(format!("dgop-golden-{}.json", std::process::id()));
    assert!(dgop(&["golden", "--regenerate", path.to_str().unwrap()]).status.success());
    let fresh: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let shipped: Value = serde_json::from_str(include_str!("../../dgop/fixtures/golden.json")).unwrap();
    assert_eq!(fresh, shipped);
}

#[test]
fn dump_cooperad_has_hopf_table() {
    let v = json(&["dump-cooperad", "--cooperad", "coP1", "--max-arity", "3"]);
    assert_eq!(v["result"]["arities"][2]["basis"].as_array().unwrap().len(), 6);
    assert!(v["result"]["arities"][1]["hopf_product"].is_array());
}
