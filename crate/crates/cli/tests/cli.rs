use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("mdeg-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write(d: &PathBuf, file: &str, text: &str) -> PathBuf {
    let p = d.join(file);
    std::fs::write(&p, text).unwrap();
    p
}

fn mdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdeg")).args(args).env_remove("MDEG_PRIME").output().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const D3: &str = r#"{"d": 3, "n": 2, "n_vec": [1, 2]}"#;

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = mdeg(&["mustafin", "fibre", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_config_reports_line_and_column() {
    let d = dir("malformed");
    let c = write(&d, "bad.json", "{\n  \"d\": 3,\n  \"n\": oops\n}");
    let o = mdeg(&["mustafin", "fibre", "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json:3:"), "{err}");

    let c = write(&d, "extra.json", r#"{"d": 3, "n": 2, "n_vec": [1, 2], "colour": 1}"#);
    let o = mdeg(&["mustafin", "fibre", "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let c = write(&d, "order.json", r#"{"d": 3, "n": 2, "n_vec": [2, 1]}"#);
    assert_eq!(mdeg(&["mustafin", "fibre", "--config", c.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn conjecture_batch_of_twenty() {
    let d = dir("batch");
    let c = write(&d, "c.json", D3);
    let o = mdeg(&["mustafin", "conjecture", "--config", c.to_str().unwrap(), "--trials", "20", "--seed", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["trials"], 20);
    assert_eq!(r["passed"], 20);
    assert_eq!(r["pass_rate"], 1.0);
    assert_eq!(r["config"]["seeds"][0], 100);
    assert_eq!(r["config"]["config"]["field"], "fp:32003");
    assert!(r["results"][3]["result"]["hilbert"]["agree"].as_bool().unwrap());
}

#[test]
fn zero_trials_give_an_empty_report() {
    let d = dir("zero");
    let c = write(&d, "c.json", D3);
    let o = mdeg(&["mustafin", "conjecture", "--config", c.to_str().unwrap(), "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["trials"], 0);
    assert_eq!(r["results"], Value::Array(vec![]));
    assert_eq!(r["pass_rate"], Value::Null);
}

#[test]
fn reruns_are_byte_identical() {
    let d = dir("determinism");
    let c = write(&d, "c.json", D3);
    let run = |threads: &str| {
        let out = d.join(format!("r{threads}.json"));
        let o = mdeg(&[
            "mustafin", "fibre", "--config", c.to_str().unwrap(), "--trials", "4", "--threads", threads, "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn field_flag_and_environment() {
    let d = dir("field");
    let c = write(&d, "c.json", r#"{"d": 2, "n": 1, "n_vec": [1]}"#);
    let o = mdeg(&["mustafin", "fibre", "--config", c.to_str().unwrap(), "--field", "fp:101"]);
    assert_eq!(report(&o)["config"]["config"]["field"], "fp:101");
    let o = Command::new(env!("CARGO_BIN_EXE_mdeg"))
        .args(["mustafin", "fibre", "--config", c.to_str().unwrap()])
        .env("MDEG_PRIME", "7")
        .output()
        .unwrap();
    assert_eq!(report(&o)["config"]["config"]["field"], "fp:7");
    assert_eq!(mdeg(&["mustafin", "fibre", "--config", c.to_str().unwrap(), "--field", "12"]).status.code(), Some(2));
}

#[test]
fn explicit_entries_and_borel() {
    let d = dir("explicit");
    let c = write(
        &d,
        "c.json",
        r#"{"d": 2, "n": 1, "n_vec": [1], "entries": [[["1","0"],["0","1"]], [["1","2"],["3","1"]]]}"#,
    );
    let o = mdeg(&["mustafin", "fibre", "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["results"][0]["result"]["generators"][0], "x[1][0]*x[1][1]");
    let b = write(&d, "b.json", r#"{"d": 4, "n": 3, "n_vec": [1, 3, 7]}"#);
    let o = mdeg(&["mustafin", "borel", "--config", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["explicit_d4_borel_fixed"], true);
}

#[test]
fn degeneration_support_of_lines_and_conics() {
    let d = dir("degen");
    let c = write(&d, "c.json", D3);
    for curve in [r#"{"kind": "linear", "codim": 1}"#, r#"{"kind": "quadric"}"#] {
        let x = write(&d, "x.json", curve);
        let o = mdeg(&["degen", "support", "--config", c.to_str().unwrap(), "--curve", x.to_str().unwrap(), "--trials", "2"]);
        assert_eq!(o.status.code(), Some(0), "{curve}: {}", String::from_utf8_lossy(&o.stdout));
        let r = report(&o);
        assert_eq!(r["results"][0]["result"]["support"]["delta"], 1);
    }
    let x = write(&d, "bound.json", r#"{"kind": "quadric"}"#);
    let o = mdeg(&["degen", "bound", "--config", c.to_str().unwrap(), "--curve", x.to_str().unwrap()]);
    assert_eq!(report(&o)["bound"], 6);
}

#[test]
fn specialization_commands() {
    let d = dir("spec");
    let p = write(
        &d,
        "p.json",
        r#"{"variables": ["x", "y", "A1", "A2", "pi"], "gens": ["pi*A1*x + A2*y"], "assignment": {"A1": "5", "A2": "pi"}}"#,
    );
    let o = mdeg(&["spec", "obstructions", "--data", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let units = report(&o)["obstructions"]["unit_conditions"].clone();
    assert!(units.as_array().unwrap().contains(&Value::from("A2")), "{units}");

    let o = mdeg(&["spec", "check", "--data", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let diag = report(&o)["check"]["diagnosis"].clone();
    assert!(diag.as_array().unwrap().contains(&Value::from("unit condition A2 violated")), "{diag}");

    let c = write(&d, "c.json", r#"{"d": 2, "n": 1, "n_vec": [1], "entries": "symbolic"}"#);
    let o = mdeg(&["spec", "sample", "--config", c.to_str().unwrap(), "--trials", "3", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["trials"], 3);
    assert_eq!(r["results"][0]["result"]["assignment"].as_object().unwrap().len(), 8);
}

#[test]
fn syzygy_admissibility() {
    let d = dir("syz");
    let c = write(&d, "c.json", D3);
    let s = write(&d, "s.json", r#"{"rho": 2, "degrees": [2, 1, 1], "witnesses": ["x[3][1]*x[3][2]", "x[3][2]", "x[3][1]"]}"#);
    let o = mdeg(&["syz", "admissible", "--config", c.to_str().unwrap(), "--data", s.to_str().unwrap(), "--seed", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["results"][0]["result"]["admissibility"]["admissible"], true);
    let bad = write(&d, "bad.json", r#"{"rho": 2, "degrees": [2, 2, 1], "witnesses": ["x[3][2]", "x[3][2]", "x[3][1]"]}"#);
    let o = mdeg(&["syz", "admissible", "--config", c.to_str().unwrap(), "--data", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
