use std::path::Path;
use std::process::{Command, Output};

use dcc_core::cover::defects;
use dcc_core::io::{certificate_from_json, cover_from_json};
use dcc_core::DefectConstraint;
use serde_json::Value;

fn dcc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fan_gadget_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcc(&["gadget", "fan", "--out", "fan.json"], dir.path());
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("fan.json")).unwrap();
    let (cover, outer) = cover_from_json(&text).unwrap();
    assert!(outer.is_some());

    let two = dcc(&["solve", "fan.json", "--defect", "2"], dir.path());
    assert_eq!(code(&two), 0);
    let cert = certificate_from_json(&stdout(&two), cover.vertex_count()).unwrap();
    assert!(!cert.is_feasible());

    let three = dcc(&["solve", "fan.json", "--defect", "3", "--pin", "u=1"], dir.path());
    assert_eq!(code(&three), 0);
    let cert = certificate_from_json(&stdout(&three), cover.vertex_count()).unwrap();
    let phi = cert.coloring().expect("3-defective coloring");
    assert_eq!(phi.get(0), Some(1));
    assert!(DefectConstraint::uniform(3).admits(&defects(&cover, phi)));
}

#[test]
fn dot_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dcc(&["gadget", "r", "--format", "dot"], dir.path());
    assert_eq!(code(&dot), 0);
    assert!(stdout(&dot).starts_with("graph"));

    assert_eq!(code(&dcc(&["gadget", "r-twisted", "--out", "tw.json"], dir.path())), 0);
    let cls = dcc(&["classify", "tw.json"], dir.path());
    assert_eq!(code(&cls), 0);
    let v: Value = serde_json::from_str(&stdout(&cls)).unwrap();
    assert_eq!(v["kind"], "diamond");
    assert_eq!(v["twisted"], true);
    assert_eq!(v["wedged"], true);
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dcc(&["verify", "lemma-3.1", "--out", "r.json"], dir.path());
    assert_eq!(code(&ok), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(v["claim"], "lemma-3.1");
    assert_eq!(v["verdict"], "verified");
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);

    assert_eq!(code(&dcc(&["verify", "no-such-claim"], dir.path())), 2);
    assert_eq!(code(&dcc(&["solve", "missing.json", "--defect", "1"], dir.path())), 2);
    assert_eq!(code(&dcc(&["gadget", "nope"], dir.path())), 2);
    assert_eq!(code(&dcc(&["bogus-subcommand"], dir.path())), 2);
}

#[test]
fn failing_fuzz_exits_one_and_writes_reproducers() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcc(&["fuzz", "--target", "lemma-5.4", "--iters", "40", "--seed", "0", "--reproducers", "rep"], dir.path());
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "falsified");
    let files: Vec<_> = std::fs::read_dir(dir.path().join("rep")).unwrap().collect();
    assert!(!files.is_empty());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap()).unwrap();
    assert_eq!(rep["target"], "lemma-5.4");
    let cover_text = serde_json::to_string(&rep["cover"]).unwrap();
    assert!(cover_from_json(&cover_text).is_ok());
}

#[test]
fn list_names_everything() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcc(&["list"], dir.path());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for id in dcc_cli::claims::claim_ids() {
        assert!(text.contains(id), "{id}");
    }
    for (t, _) in dcc_cli::fuzz::TARGETS {
        assert!(text.contains(t));
    }
}
