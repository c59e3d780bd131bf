use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tanglebound::io::{rho_to_json, state4_to_json};
use tanglebound::qstate::{random_state, PureState4};
use tanglebound::rank2::ghzw_state;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tanglebound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn invariants_report() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", &state4_to_json(&random_state(1)));
    let out = run(&["invariants", "--state", &s]);
    assert!(out.status.success());
    let v = json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    let traced: Vec<&str> = reports
        .iter()
        .map(|r| r["traced"].as_str().unwrap())
        .collect();
    assert_eq!(traced, ["A4", "A3", "A2"]);
    assert_eq!(reports[0]["I"].as_object().unwrap().len(), 5);

    let out = run(&["invariants", "--state", &s, "--traced", "A3", "--fonts"]);
    let v = json(&out);
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
    assert!(v["fonts"].is_object());

    let out = run(&["invariants", "--state", &s, "--traced", "A1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn three_qubit_state() {
    let dir = tempfile::tempdir().unwrap();
    let ghz = serde_json::json!({
        "n_qubits": 3,
        "amps": [[std::f64::consts::FRAC_1_SQRT_2, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [std::f64::consts::FRAC_1_SQRT_2, 0]]
    });
    let s = write(dir.path(), "ghz.json", &ghz);
    let v = json(&run(&["invariants", "--state", &s]));
    assert!((v["tau"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn bound_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", &state4_to_json(&random_state(2)));
    let target = dir.path().join("out.json");
    let out = run(&[
        "bound",
        "--state",
        &s,
        "--triple",
        "A1A3A4",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["triple"], "A1A3A4");
    let best = v["best"].as_f64().unwrap();
    let methods = v["methods"].as_array().unwrap();
    assert!(methods.iter().any(|m| m["method"] == "cap"));
    for m in methods.iter().filter(|m| m["certified"] == true) {
        assert!(best <= m["value"].as_f64().unwrap());
    }
}

#[test]
fn bad_states_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let short = serde_json::json!({ "n_qubits": 4, "amps": [[1, 0], [0, 0]] });
    let s = write(dir.path(), "short.json", &short);
    let out = run(&["bound", "--state", &s]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 16"));

    let unnormalized = state4_to_json(&PureState4::ghz().scale(tanglebound::C64::new(2.0, 0.0)));
    let s = write(dir.path(), "big.json", &unnormalized);
    assert_eq!(
        run(&["bound", "--state", &s, "--triple", "A1A2A3"])
            .status
            .code(),
        Some(1)
    );
    let out = run(&["bound", "--state", &s, "--triple", "A1A2A3", "--normalize"]);
    assert!(out.status.success());

    let out = run(&["bound", "--state", "/nonexistent/state.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_ghzw() {
    let dir = tempfile::tempdir().unwrap();
    let r = write(
        dir.path(),
        "rho.json",
        &rho_to_json(&ghzw_state(0.5).unwrap()),
    );
    let out = run(&[
        "decompose",
        "--rho",
        &r,
        "--theta-samples",
        "6",
        "--grid",
        "48",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["bound"].as_f64().unwrap() < 1e-6);
    assert!(v["reconstruction_error"].as_f64().unwrap() < 1e-8);

    let full = tanglebound::qstate::MixedState3::mixture(&[
        (0.4, tanglebound::qstate::PureState3::basis(0)),
        (0.3, tanglebound::qstate::PureState3::basis(1)),
        (0.3, tanglebound::qstate::PureState3::basis(2)),
    ])
    .unwrap();
    let r = write(dir.path(), "rank3.json", &rho_to_json(&full));
    assert_eq!(run(&["decompose", "--rho", &r]).status.code(), Some(1));
}

#[test]
fn classes_example() {
    let out = run(&[
        "classes", "--id", "II", "--a", "2+0i", "--d", "1+0i", "--c", "1+0i", "--triple", "A1A2A3",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    let row = &v["rows"][0];
    assert!((row["best_bound"].as_f64().unwrap() - 3.0 / 16.0).abs() < 1e-9);
    assert!(row["deltas"]["paper"].as_f64().unwrap().abs() < 1e-9);

    let v = json(&run(&["classes", "--id", "IX"]));
    assert_eq!(v["focus_excluded"]["value"], 0.25);
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["selftest", "--criterion", "3"]);
    let b = run(&["selftest", "--criterion", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);
}

#[test]
fn selftest_detects_injected_fault() {
    let out = run(&["selftest", "--criterion", "5", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["passed"], false);
    assert_eq!(
        run(&["selftest", "--criterion", "5"]).status.code(),
        Some(0)
    );
}

#[test]
fn thread_cap_is_honored() {
    let out = bin()
        .env("TANGLEBOUND_THREADS", "1")
        .args(["ghzw", "--p", "0.3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["branch"], "below");
}
