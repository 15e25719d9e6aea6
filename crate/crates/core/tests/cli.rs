use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn radcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("radcomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn decide_exit_codes() {
    let out = radcomp(&["decide", "--n", "3", "--p", "2", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["justification"], "ExplicitSection");

    let out = radcomp(&["decide", "--n", "7", "--p", "3", "--k", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let d = json(&out);
    assert_eq!(d["justification"], "ObstructionUNSAT+LemmaReduction");
    assert_eq!(d["evidence"]["certificate"]["fixture"], "prop1-p3");

    let out = radcomp(&["decide", "--n", "2", "--p", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn witness_round_trip_and_tamper() {
    let out = radcomp(&["witness", "--n", "3", "--p", "2", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let path = temp_file("w.json", &out.stdout);
    let check = radcomp(&["verify", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["valid"], true);

    let mut w = json(&out);
    let entry = &mut w["generator_images"][0]["rows"][0][1];
    *entry = Value::from(entry.as_u64().unwrap() + 1);
    let path = temp_file("bad.json", w.to_string().as_bytes());
    let check = radcomp(&["verify", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
    assert_eq!(json(&check)["valid"], false);

    let out = radcomp(&["witness", "--n", "4", "--p", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certificate_round_trip() {
    let out = radcomp(&["certify-no", "--n", "3", "--p", "3", "--k", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let path = temp_file("c.json", &out.stdout);
    let check = radcomp(&["verify", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["kind"], "no_complement_certificate");

    let mut c = json(&out);
    let mults = c["obstruction"]["multipliers"].as_array().unwrap();
    let used = mults.iter().position(|m| m.as_u64() != Some(0)).unwrap();
    c["obstruction"]["multipliers"][used] = Value::from(0);
    let path = temp_file("c-bad.json", c.to_string().as_bytes());
    assert_eq!(
        radcomp(&["verify", path.to_str().unwrap()]).status.code(),
        Some(1)
    );

    let out = radcomp(&[
        "certify-no",
        "--n",
        "4",
        "--p",
        "2",
        "--k",
        "2",
        "--fixture",
        "prop1-p2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let mults = json(&out)["obstruction"]["multipliers"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(mults.iter().filter(|m| m.as_u64() != Some(0)).count(), 8);

    assert_eq!(
        radcomp(&["certify-no", "--n", "2", "--p", "2", "--k", "2"])
            .status
            .code(),
        Some(0)
    );
    let out = radcomp(&["certify-no", "--n", "3", "--p", "5", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["justification"], "TheoremTable");
    let out = radcomp(&[
        "certify-no",
        "--n",
        "4",
        "--p",
        "2",
        "--k",
        "2",
        "--fixture",
        "nope",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_garbage() {
    let path = temp_file("garbage.json", b"{\"hello\": 1}");
    assert_eq!(
        radcomp(&["verify", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        radcomp(&["verify", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn table_and_selftest() {
    let out = radcomp(&["table", "--n-max", "4", "--primes", "2,3,5", "--k-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 36);

    let out = radcomp(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn search_budget_is_honoured() {
    let out = radcomp(&[
        "--search-budget",
        "10",
        "witness",
        "--n",
        "2",
        "--p",
        "3",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("search budget"));
}
