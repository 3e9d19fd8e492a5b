use std::io::Write;
use std::process::{Command, Output, Stdio};

use entmix::io::State;
use entmix::zoo::{ghz_state, Sign};

fn entmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entmix"))
        .args(args)
        .env_remove("ENTMIX_SEED")
        .output()
        .expect("binary runs")
}

fn entmix_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_entmix"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn construct_ghz_minus() {
    let out = entmix(&["construct", "ghz", "--n", "4", "--d", "2", "--sign", "-"]);
    assert!(out.status.success());
    let parsed = State::from_json(&stdout(&out)).unwrap();
    assert_eq!(parsed, State::Pure(ghz_state(4, 2, Some(Sign::Minus)).unwrap()));
}

#[test]
fn construct_then_detect_round_trips_over_the_zoo() {
    let cases: &[&[&str]] = &[
        &["bell", "--which", "phi-"],
        &["ghz", "--n", "3", "--d", "3"],
        &["shifted", "--n", "3", "--d", "3", "--j", "2"],
        &["dicke", "--n", "4", "--m", "2"],
        &["w", "--n", "3"],
        &["stormer", "--alpha", "3.5"],
    ];
    for args in cases {
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        let built = entmix(&full);
        assert!(built.status.success(), "{args:?}");
        let text = stdout(&built);
        let state = State::from_json(&text).unwrap();
        assert_eq!(State::from_json(&state.to_json()).unwrap(), state);
        let report = entmix_stdin(&["detect"], &text);
        assert!(report.status.success(), "{args:?}: {}", String::from_utf8_lossy(&report.stderr));
        let v = json(&report);
        assert_eq!(v["n"].as_u64().unwrap() as usize, state.shape().n());
    }
}

#[test]
fn construct_rejects_bad_input() {
    let out = entmix(&["construct", "stormer", "--alpha", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("positive"));
    assert_eq!(entmix(&["construct", "cluster", "--n", "3"]).status.code(), Some(1));
    assert_eq!(entmix(&["construct", "dicke", "--n", "4"]).status.code(), Some(1));
    assert_eq!(entmix(&["construct", "ghz", "--n", "13"]).status.code(), Some(3));
    assert_eq!(entmix(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(entmix(&["--help"]).status.code(), Some(0));
}

#[test]
fn detect_reports_parse_location() {
    let out = entmix_stdin(&["detect"], "{\"n\": 2,\n \"d\": 2,\n \"kind\": }");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn detect_stormer_bound_regime() {
    let built = stdout(&entmix(&["construct", "stormer", "--alpha", "3.5"]));
    let v = json(&entmix_stdin(&["detect", "-"], &built));
    assert_eq!(v["purity"]["detected"], false);
    assert_eq!(v["entanglement_type"], "not_detected_entangled");
    assert!(v["ppt"].as_array().unwrap().iter().all(|p| p["holds"] == true));
    assert!(v["notes"][0].as_str().unwrap().contains("bound"));
}

#[test]
fn mix_and_theorem_check_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("rho_a.json");
    std::fs::write(&spec, r#"{"weights":[0.75,0.25],"states":["ghz:n=4,sign=+","ghz:n=4,sign=-"]}"#).unwrap();
    let spec = spec.to_str().unwrap();

    let mix = json(&entmix(&["mix", "--spec", spec]));
    assert!((mix["purity"].as_f64().unwrap() - 0.625).abs() < 1e-12);
    assert_eq!(mix["membership_n"], serde_json::json!(["yes", "yes"]));

    let verdict = json(&entmix(&["theorem-check", "--theorem", "3", "--spec", spec]));
    assert_eq!(verdict["outcome"], "confirmed");
    assert_eq!(verdict["genuineness"], "genuine");

    let t1 = entmix(&["theorem-check", "--theorem", "1", "--spec", spec]);
    assert!(t1.status.success());
    assert_eq!(json(&t1)["outcome"], "hypotheses_not_met");

    assert_eq!(entmix(&["theorem-check", "--theorem", "4", "--spec", spec]).status.code(), Some(1));
    assert_eq!(entmix(&["mix", "--spec", "/nonexistent/spec.json"]).status.code(), Some(1));
}

#[test]
fn fuzz_seed_flag_overrides_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_entmix"));
        cmd.args(["fuzz", "--theorem", "2", "--trials", "6", "--summary-only"]).args(args);
        match env {
            Some(v) => cmd.env("ENTMIX_SEED", v),
            None => cmd.env_remove("ENTMIX_SEED"),
        };
        json(&cmd.output().unwrap())
    };
    assert_eq!(run(Some("77"), &[])["seed"], 77);
    assert_eq!(run(Some("77"), &["--seed", "5"])["seed"], 5);
    assert_eq!(run(None, &[])["seed"], 0);
    assert_eq!(run(None, &["--seed", "5"]), run(Some("1"), &["--seed", "5"]));
}

#[test]
fn stormer_scan_is_deterministic_and_flips_at_the_roots() {
    let args = ["stormer-scan", "--alpha-min", "-2", "--alpha-max", "7", "--step", "0.5"];
    let a = entmix(&args);
    let b = entmix(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let detected: Vec<String> = stdout(&a)
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(3) == Some("true"))
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(detected, ["-2", "-1.5", "6.5", "7"]);
    assert_eq!(entmix(&["stormer-scan", "--alpha-min", "1", "--alpha-max", "0", "--step", "0.1"]).status.code(), Some(1));
}

#[test]
fn reproduce_cases_exit_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    for case in entmix::report::CASES {
        let path = dir.path().join(format!("{case}.json"));
        let out = entmix(&["reproduce", case, "--json-out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{case}: {}", stdout(&out));
        assert!(stdout(&out).contains("overall: ok"));
        let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(saved["pass"], true);
    }
    assert_eq!(entmix(&["reproduce", "rhoC"]).status.code(), Some(1));
}
