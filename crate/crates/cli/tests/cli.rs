use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn omega23(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega23")).args(args).env_remove("OMEGA23_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn assert_valid(schema: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

/// The report with its timing fields removed.
fn untimed(mut v: Value) -> Value {
    if let Some(m) = v.as_object_mut() {
        m.remove("timing_ms");
        m.remove("elapsed_ms");
    }
    v
}

#[test]
fn generate_prints_a_valid_pair() {
    let out = omega23(&["generate", "--n", "9", "--q", "3", "--a", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("generate", &v);
    assert_eq!(v["params"]["a"], 2);
    assert_eq!(v["x"]["rows"], 9);
}

#[test]
fn extension_field_parameters_use_coefficient_arrays() {
    let out = omega23(&["generate", "--n", "12", "--q", "3^2", "--a", "[1,1]"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["params"]["a"], serde_json::json!([1, 1]));
    assert_eq!(v["params"]["field"]["modulus"], serde_json::json!([1, 0, 1]));
}

#[test]
fn verify_all_passes() {
    let out = omega23(&["verify", "--n", "15", "--q", "7", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("verification_report", &v);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn forced_parameter_fails_checks() {
    let out = omega23(&["verify", "--n", "9", "--q", "3", "--a", "1", "--force"]);
    assert_eq!(out.status.code(), Some(1));
    assert_valid("verification_report", &json(&out));
}

#[test]
fn claims_suite_filters_rows() {
    let out = omega23(&["verify", "--suite", "claims", "--n", "9", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("verification_report", &v);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn certify_headline_instance() {
    let out = omega23(&["certify", "--n", "9", "--q", "3", "--seed", "53251"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("certificate", &v);
    assert_eq!(v["verdict"], "Generates");
    assert_eq!(v["computed_order"], v["target_order"]);
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let out = omega23(&["certify", "--n", "9", "--q", "3", "--orbit-cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "Inconclusive");
}

#[test]
fn certification_outside_omega_is_a_failure() {
    let out = omega23(&["certify", "--n", "9", "--q", "3", "--a", "1", "--force"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "Inconclusive");
    assert!(v["note"].as_str().unwrap().contains("not all in Omega"));
}

#[test]
fn seed_comes_from_flag_then_environment() {
    let v = json(&omega23(&["certify", "--n", "9", "--q", "3"]));
    assert_eq!(v["seed"], 53251);
    let out = Command::new(env!("CARGO_BIN_EXE_omega23"))
        .args(["certify", "--n", "9", "--q", "3"])
        .env("OMEGA23_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 11);
    let out = Command::new(env!("CARGO_BIN_EXE_omega23"))
        .args(["certify", "--n", "9", "--q", "3", "--seed", "5"])
        .env("OMEGA23_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 5);
}

#[test]
fn identical_runs_give_identical_json() {
    for args in [
        &["certify", "--n", "9", "--q", "3", "--seed", "9"][..],
        &["verify", "--n", "12", "--q", "5", "--claims"][..],
        &["search-a", "--n", "13", "--q", "27"][..],
    ] {
        let a = omega23(args);
        let b = omega23(args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(untimed(json(&a)), untimed(json(&b)), "{args:?}");
        // apart from the timing fields the bytes agree
        let strip = |o: &Output| {
            String::from_utf8_lossy(&o.stdout)
                .lines()
                .filter(|l| !l.contains("\"timing_ms\"") && !l.contains("\"elapsed_ms\""))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(&a), strip(&b));
    }
}

#[test]
fn search_reports_the_counting_bound() {
    let out = omega23(&["search-a", "--n", "9", "--q", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("search_report", &v);
    assert_eq!(v["bound"]["holds"], false);
    assert_eq!(v["values"][0], serde_json::json!([0, 1]));
}

#[test]
fn spinor_of_a_reflection_product() {
    // diag(-1, -1, 1) = r_{e1} r_{e2} on the identity form: Q(e_i) = 1/2 for both
    let out = omega23(&[
        "spinor",
        "--q",
        "3",
        "--matrix",
        "[[2,0,0],[0,2,0],[0,0,1]]",
        "--gram",
        "[[1,0,0],[0,1,0],[0,0,1]]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("spinor", &v);
    assert_eq!(v["det"], 1);
    assert_eq!(v["spinor_norm"], "square");
    assert_eq!(v["in_omega"], true);
}

#[test]
fn spinor_defaults_to_the_construction_form() {
    let pair = json(&omega23(&["generate", "--n", "9", "--q", "5"]));
    let x = pair["x"].to_string();
    let out = omega23(&["spinor", "--q", "5", "--matrix", &x]);
    let v = json(&out);
    assert_valid("spinor", &v);
    assert_eq!(v["in_omega"], true);
}

#[test]
fn oracle_matches_formulas() {
    let out = omega23(&["oracle", "--n", "3", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("oracle", &v);
    assert_eq!(v["omega_order"]["omega"], 12);
    let v = json(&omega23(&["oracle", "--n", "6", "--q", "3", "--kind", "witt-type"]));
    assert_eq!(v["witt_type"]["counted"], "minus");
    assert_eq!(v["witt_type"]["matches"], true);
}

#[test]
fn usage_errors_exit_two_with_json_diagnostics() {
    for args in [
        &["generate", "--n", "9"][..],
        &["generate", "--n", "9", "--q", "4"][..],
        &["generate", "--n", "9", "--q", "6"][..],
        &["generate", "--n", "10", "--q", "3"][..],
        &["generate", "--n", "9", "--q", "3", "--a", "1"][..],
        &["verify", "--suite", "all"][..],
        &["certify", "--n", "9", "--q", "3", "--restrict-s9"][..],
    ] {
        let out = omega23(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_valid("error", &err);
    }
}

#[test]
fn text_format_lists_checks() {
    let out = omega23(&["verify", "--n", "9", "--q", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS x^2 = I")), "{text}");
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("omega23-cli-test-{}.json", std::process::id()));
    let out = omega23(&["search-a", "--n", "12", "--q", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["case"], "B6");
}
