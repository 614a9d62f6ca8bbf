use std::process::Command;

use qhowe_core::cli::{execute, Cli};
use qhowe_core::report::Report;

fn qhowe(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhowe")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    let (code, text) = qhowe(&["relations", "--type", "D", "--epsilon", "1111", "--module", "W", "--ell", "1", "--max-degree", "6"]);
    assert_eq!(code, 0);
    let rep: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(rep.schema, "qhowe-report/1");
    assert_eq!(rep.summary.pass, rep.items.len());

    let (code, text) = qhowe(&["commutant", "--type", "C", "--epsilon", "1111", "--module", "W2", "--ell", "2", "--varsigma", "q"]);
    assert_eq!(code, 1);
    let rep: Report = serde_json::from_str(&text).unwrap();
    assert!(rep.items.iter().any(|i| i.name == "[e0,B2]" && i.witness.is_some()));

    let (code, _) = qhowe(&["relations", "--type", "C", "--epsilon", "1111", "--module", "W", "--ell", "1"]);
    assert_eq!(code, 2);
    let (code, _) = qhowe(&["commutant", "--type", "C", "--epsilon", "1111", "--module", "W2", "--ell", "2", "--family", "so"]);
    assert_eq!(code, 2);
}

#[test]
fn decompose_csv() {
    let (code, text) = qhowe(&[
        "decompose", "--type", "D", "--epsilon", "1111", "--module", "W", "--ell", "2", "--max-degree", "2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<String>> = text.lines().skip(1).map(|l| l.rsplitn(4, ',').map(String::from).collect()).collect();
    let tail: Vec<(String, String, String)> =
        rows.iter().map(|r| (r[2].clone(), r[1].clone(), r[0].clone())).collect();
    assert_eq!(tail[1..].to_vec(), vec![
        ("2".into(), "2".into(), "true".into()),
        ("2".into(), "2".into(), "true".into()),
        ("1".into(), "1".into(), "true".into())
    ]);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("qhowe-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"type":"C","epsilon":"1111","module":"W2","ell":1,"maxDegree":3}"#).unwrap();
    let p = path.to_str().unwrap();
    let (code, text) = qhowe(&["scan", "--config", p, "--max-degree", "2"]);
    assert_eq!(code, 0);
    let rep: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(rep.config["maxDegree"], 2);
    assert_eq!(rep.items.len(), 3);
}

#[test]
fn jobs_do_not_change_the_body() {
    let base = ["qhowe", "polarization", "--type", "C", "--epsilon", "0110", "--module", "W", "--ell", "2", "--max-degree", "3"];
    let one = execute(&<Cli as clap::Parser>::parse_from(base.iter().chain(&["--jobs", "1"]))).unwrap();
    let four = execute(&<Cli as clap::Parser>::parse_from(base.iter().chain(&["--jobs", "4"]))).unwrap();
    assert_eq!(one.report.body_json(), four.report.body_json());
}
