use std::io::Write;
use std::process::{Command, Output, Stdio};

use qpkit::{verify_certificate, QpCertificate};

fn qpkit(args: &[&str], stdin: &str) -> Output {
    qpkit_env(args, stdin, &[])
}

fn qpkit_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qpkit"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("QPKIT_LIMIT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qpkit(&["classify", "--out", out], "Dhc\n?\nEhf?\n");
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 3);
    assert_eq!(records[0]["quasiperfect"], false);
    assert_eq!((records[0]["omega"].as_u64(), records[0]["chi"].as_u64()), (Some(2), Some(3)));
    assert_eq!(records[1]["quasiperfect"], true);
    assert_eq!(records[2]["quasiperfect"], true);

    let name = records[2]["cert_ref"].as_str().unwrap();
    let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
    assert!(text.contains("qpcert-v1"));
    let cert = QpCertificate::from_json(&text).unwrap();
    verify_certificate(&qpkit::parse_graph6("Ehf?").unwrap(), &cert).unwrap();
    assert!(records[0]["cert_ref"].is_null());
}

#[test]
fn classify_edge_list_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = qpkit(
        &["classify", "--format", "edgelist", "--no-certs", "--mode", "pure", "--csv", csv.to_str().unwrap()],
        "4 3\n0 1\n1 2\n2 3\n",
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"quasiperfect\":true"));
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 2);
}

#[test]
fn classify_errors() {
    assert_eq!(qpkit(&["classify", "--no-certs"], "D h\n").status.code(), Some(2));
    assert_eq!(qpkit(&["classify", "--no-certs", "/no/such/file"], "").status.code(), Some(2));
    let o = qpkit_env(&["classify", "--no-certs"], "Dhc\n", &[("QPKIT_LIMIT", "4")]);
    assert_eq!(o.status.code(), Some(3));
    let o = qpkit(&["classify", "--no-certs", "--limit", "4"], "Dhc\n");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn construct() {
    let o = qpkit(&["construct", "family n=5 k=1"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(qpkit::parse_graph6(lines.next().unwrap()).unwrap().order(), 6);
    assert_eq!(lines.next().unwrap(), "PK=[0, 1, 5]");
    assert!(lines.next().unwrap().starts_with("PI="));

    let o = qpkit(&["construct", "c5blowup t=3"], "");
    assert_eq!(qpkit::parse_graph6(stdout(&o).trim()).unwrap().order(), 16);

    let o = qpkit(&["construct", "--format", "edgelist", "family n=7 k={1,3,5}"], "");
    assert!(stdout(&o).starts_with("10 13\n"));

    assert_eq!(qpkit(&["construct", "family n=4 k=1"], "").status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = qpkit(&["verify", "theorem1", "--n-max", "6"], "");
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["violations"], serde_json::json!([]));
    assert_eq!(report["graphs_scanned"], 209);

    let o = qpkit(&["verify", "all", "--n-max", "5"], "");
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 4);

    assert_eq!(qpkit(&["verify", "nosuch"], "").status.code(), Some(2));
    assert_eq!(qpkit(&["verify", "theorem1", "--n-max", "9"], "").status.code(), Some(2));
}

#[test]
fn verify_is_byte_identical_apart_from_stats() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["stats"] = serde_json::Value::Null;
        v.to_string()
    };
    let a = strip(qpkit(&["--threads", "1", "verify", "theorem2", "--n-max", "5"], ""));
    let b = strip(qpkit(&["--threads", "3", "verify", "theorem2", "--n-max", "5"], ""));
    assert_eq!(a, b);
}

#[test]
fn verify_from_stream() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = qpkit(&["verify", "theorem1", "--input", "-", "--out", report.to_str().unwrap()], "Dhc\nEhf?\n");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["graphs_scanned"], 2);
    assert_eq!(v["config"]["source"]["kind"], "stream");
}

#[test]
fn surveys_and_supergraph() {
    let o = qpkit(&["survey", "reading-divergence", "--n-max", "6"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["findings"]["diverging"].as_array().unwrap().len(), 4);

    let o = qpkit(&["survey", "color-removal", "--n-max", "5", "--all-colorings"], "");
    assert_eq!(o.status.code(), Some(0));

    let o = qpkit(&["supergraph", "Dhc", "--k-max", "1"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["found"].as_bool(), v["added"].as_u64()), (Some(true), Some(1)));
    let o = qpkit(&["supergraph", "Dhc", "--k-max", "0"], "");
    assert!(stdout(&o).contains("\"found\": false"));
    assert_eq!(qpkit(&["supergraph", "Dhc", "--k-max", "9"], "").status.code(), Some(3));
}
