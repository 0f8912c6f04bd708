use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn geo5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geo5")).args(args).env("GEO5_SEED", "7").output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn atlas_list_has_every_entry() {
    let o = geo5(&["atlas", "list", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 59);
    assert_eq!(arr.iter().filter(|e| e["kind"] == "family").count(), 6);
}

#[test]
fn atlas_list_filters() {
    let v = json(&geo5(&["atlas", "list", "--json", "--category", "1"]));
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(geo5(&["atlas", "list", "--category", "9"]).status.code(), Some(2));
}

#[test]
fn atlas_show_includes_constants() {
    let v = json(&geo5(&["--json", "atlas", "show", "Sol^3 x E^2"]));
    assert_eq!(v["algebra"]["dim"], 5);
    assert_eq!(geo5(&["atlas", "show", "nonsense"]).status.code(), Some(2));
}

#[test]
fn heis5_is_not_in_key() {
    let o = geo5(&["classify", &fixture("heis5.json")]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("NotInKey") && err.contains("fingerprint"), "{err}");

    let o = geo5(&["--json", "classify", &fixture("heis5.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"], "NotInKey");
    assert_eq!(v["fingerprint"]["center_dim"], 1);
}

#[test]
fn classify_success_and_trace() {
    let o = geo5(&["--json", "classify", &fixture("a57_repeated.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["label"], "A5,7^{1,-1,-1}");
    assert_eq!(v["status"], "certified");
    assert!(v["trace"].as_array().unwrap().iter().all(|s| s["question"].is_string() && s["answer"].is_string()));

    let human = String::from_utf8(geo5(&["classify", "--trace", &fixture("a57_repeated.json")]).stdout).unwrap();
    assert!(human.starts_with("A5,7^{1,-1,-1}\n"));
    assert!(human.contains("Jordan blocks: 4"));
}

#[test]
fn io_and_parse_errors_exit_2() {
    assert_eq!(geo5(&["classify", "missing.json"]).status.code(), Some(2));
    assert_eq!(geo5(&["classify", &fixture("malformed.json")]).status.code(), Some(2));
    assert_eq!(geo5(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(geo5(&["atlas", "list", "--bogus"]).status.code(), Some(2));
    assert_eq!(geo5(&["lattice", "unit-check", "x^^3"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    assert_eq!(geo5(&["classify", &fixture("not_lie.json")]).status.code(), Some(1));
    assert_eq!(geo5(&["classify", &fixture("heis3.json")]).status.code(), Some(1));
    let o = geo5(&["--json", "lattice", "unit-check", "x^3-2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["reasons"], serde_json::json!(["not_totally_real", "not_unit"]));
    assert_eq!(geo5(&["group", "check", "S^5"]).status.code(), Some(1));
}

#[test]
fn isotropy_contains() {
    let v = json(&geo5(&["--json", "isotropy", "contains", "SO(5)", "SO(3)_5"]));
    assert_eq!(v["contains"], true);
    let out = geo5(&["isotropy", "contains", "SO(3)_5", "SO(5)"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "false\n");
    assert_eq!(geo5(&["isotropy", "contains", "SO(7)", "SO(5)"]).status.code(), Some(2));
}

#[test]
fn lattice_verbs() {
    let v = json(&geo5(&["--json", "lattice", "dirichlet", "x^3+x^2-2x-1"]));
    assert_eq!(v["det"], "1");
    assert_eq!(v["discrete"], true);

    let target = r#"[1, -0.5, -0.5]"#;
    let o = geo5(&["--json", "lattice", "sol-search", "--bound", "5", "--target", target]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["verdict"].is_string());
    assert_eq!(geo5(&["lattice", "sol-search", "--bound", "40", "--target", target]).status.code(), Some(2));
    assert_eq!(geo5(&["lattice", "sol-search", "--target", "{\"x\": 1}"]).status.code(), Some(2));
}

#[test]
fn group_check_passes() {
    let o = geo5(&["--json", "group", "check", "A5,15^{-1}"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["pass"], true);
}

#[test]
fn curvature_file_and_label() {
    let v = json(&geo5(&["--json", "curvature", &fixture("heis3.json")]));
    assert_eq!(v["sectional"][0][1], "-3/4");
    assert_eq!(v["scalar"], "-1/2");
    let v = json(&geo5(&["--json", "curvature", "E^5"]));
    assert_eq!(v["scalar"], "0");
    assert_eq!(geo5(&["curvature", "S^5"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "atlas", "list"],
        vec!["--json", "group", "check", "Nil^4 x E"],
        vec!["--json", "classify", &fixture("a57_repeated.json")],
    ] {
        let a = geo5(&args);
        let b = geo5(&args);
        assert_eq!(a.stdout, b.stdout);
    }
}
