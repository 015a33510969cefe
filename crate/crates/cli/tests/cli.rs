use std::process::{Command, Output};

use serde_json::Value;

fn qcapelli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcapelli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect()
}

fn all_pass(recs: &[Value]) -> bool {
    !recs.is_empty() && recs.iter().all(|r| r["status"] == "pass")
}

#[test]
fn spectrum_of_the_oscillator_cell() {
    let out = qcapelli(&["spectrum", "--n", "1", "--nu", "1", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["lhs"]["text"], "1 - q^6");
    assert_eq!(recs[0]["rhs"]["text"], "1 - q^6");
    assert_eq!(recs[0]["params"]["nu"], "1");
}

#[test]
fn spectrum_pads_short_partitions() {
    let out = qcapelli(&["spectrum", "--n", "2", "--nu", "1", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs[0]["params"]["nu"], "1,0");
    assert!(all_pass(&recs));
}

#[test]
fn theorem2_passes_for_n2() {
    let out = qcapelli(&["verify", "theorem2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert!(all_pass(&recs));
    assert!(recs.iter().any(|r| r["claim"] == "theorem2-spectrum"));
}

#[test]
fn lemmas_pass_for_n2() {
    let out = qcapelli(&["verify", "lemmas34", "--n", "2", "--max-nu", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 9);
    assert!(all_pass(&recs));
}

#[test]
fn theorem1_and_props_pass_on_small_grids() {
    for args in [
        &["verify", "theorem1", "--n", "2", "--max-nu", "2", "--max-lambda", "3"][..],
        &["verify", "props", "--n", "2", "--samples", "5"],
        &["verify", "interpolation", "--n", "2", "--q", "1/2", "--t", "1/3", "--t-equals-q"],
    ] {
        let out = qcapelli(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(all_pass(&records(&out)), "{args:?}");
    }
}

#[test]
fn classical_limit_matches_factorial_schur() {
    let out = qcapelli(&["limit", "--n", "2", "--nu", "1,1", "--lambda", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs[0]["lhs"]["text"], "3");
    assert_eq!(recs[0]["rhs"]["text"], "3");
}

#[test]
fn degenerate_parameters_exit_one() {
    let out = qcapelli(&["verify", "interpolation", "--n", "2", "--q", "1", "--t", "1", "--max-lambda", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    let failed: Vec<&Value> = recs.iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r.get("error").is_some() || (r.get("lhs").is_some() && r.get("rhs").is_some())));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "nonsense"][..],
        &["spectrum", "--n", "1", "--nu", "1,1", "--lambda", "3"],
        &["spectrum", "--n", "2", "--nu", "1,2", "--lambda", "3"],
        &["spectrum", "--n", "2", "--nu", "x", "--lambda", "3"],
        &["verify", "theorem1", "--n", "0"],
        &["verify", "interpolation", "--n", "1", "--q", "0"],
        &["verify", "interpolation", "--n", "1", "--q", "half"],
        &["spectrum", "--n", "1", "--nu", "1"],
    ] {
        assert_eq!(qcapelli(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "theorem1", "--n", "2", "--max-nu", "2", "--max-lambda", "2"];
    let a = qcapelli(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_qcapelli"))
        .args(args)
        .env("QCAPELLI_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn bad_thread_cap_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcapelli"))
        .args(["spectrum", "--n", "1", "--nu", "1", "--lambda", "1"])
        .env("QCAPELLI_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = qcapelli(&[
        "spectrum", "--n", "2", "--nu", "1,1", "--lambda", "2,1", "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("claim,params,status,lhs,rhs,error,wall_ms"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("spectrum,\"lambda=2,1;n=2;nu=1,1\",pass,"), "{row}");
}

#[test]
fn timings_are_opt_in() {
    let base = ["spectrum", "--n", "1", "--nu", "1", "--lambda", "2"];
    assert!(records(&qcapelli(&base))[0].get("wall_ms").is_none());
    let mut timed = base.to_vec();
    timed.push("--timings");
    assert!(records(&qcapelli(&timed))[0]["wall_ms"].is_number());
}
