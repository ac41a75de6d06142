use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pisot-doubling"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn analyze_csv_schema_and_determinism() {
    let args = ["analyze", "--m", "3", "--p1", "1/2", "--depth", "14"];
    let a = run(&args);
    assert!(a.status.success());
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,num_points,max_ratio_exact,max_ratio_decimal,argmax_index")
    );
    assert_eq!(lines.count(), 13);
    assert!(text.contains("\n14,"));
    assert!(String::from_utf8_lossy(&a.stderr).contains("non-doubling-certified"));
    assert_eq!(stdout(&run(&args)), text);
}

#[test]
fn analyze_json_verdicts() {
    let v = json(&run(&[
        "analyze", "--m", "2", "--p1", "1/2", "--depth", "14", "--format", "json",
    ]));
    assert_eq!(v["tag"], "doubling-consistent-to-depth");
    assert!(v["certificate"].is_null());
    for e in v["series"].as_array().unwrap() {
        assert!(e["max_ratio_decimal"].as_str().unwrap() <= "2.000000000000");
    }
    let v = json(&run(&[
        "analyze", "--m", "2", "--p1", "1/3", "--depth", "8", "--format", "json",
    ]));
    assert_eq!(v["tag"], "non-doubling-certified");
    assert_eq!(v["certificate"]["kind"], "golden");
    assert_eq!(v["certificate"]["index"], 16);
}

#[test]
fn analyze_cap_is_nonzero_exit() {
    let o = run(&[
        "analyze",
        "--m",
        "3",
        "--p1",
        "1/2",
        "--depth",
        "12",
        "--max-points",
        "50",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["tag"], "inconclusive");
}

#[test]
fn rejects_float_probabilities() {
    let o = run(&["analyze", "--m", "3", "--p1", "0.5", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witness_reports() {
    let o = run(&["witness", "--m", "3", "--p1", "1/2", "--k", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("R_k = 3/1"), "{text}");
    assert!(text.contains("cross-validation at rank 14: PASS"));
    let v = json(&run(&[
        "witness", "--m", "3", "--p1", "1/4", "--k", "2", "--format", "json",
    ]));
    assert_eq!(v["r_k"]["exact"], "47/3");
    let v = json(&run(&[
        "witness",
        "--m",
        "4",
        "--p1",
        "1/2",
        "--threshold",
        "10",
        "--format",
        "json",
    ]));
    assert_eq!(v["k"], 19);
    let o = run(&["witness", "--m", "2", "--p1", "1/2", "--k", "2"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("golden"));
}

#[test]
fn golden_subcommand() {
    let v = json(&run(&[
        "golden",
        "--p1",
        "1/3",
        "--threshold",
        "100",
        "--format",
        "json",
    ]));
    assert_eq!(v["ell"], 12);
    assert_eq!(v["lower_bound"]["exact"], "1024/7");
    let w = json(&run(&[
        "golden",
        "--p1",
        "2/3",
        "--threshold",
        "100",
        "--format",
        "json",
    ]));
    assert_eq!(w["reflected"], true);
    assert_eq!(w["r_ell"], v["r_ell"]);
    let o = run(&["golden", "--p1", "1/2", "--depth", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2-balanced"));
}

#[test]
fn verify_passes_and_locates_faults() {
    let o = run(&["verify", "--m", "3", "--depth", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("PASS").count(), 6);
    let o = run(&["verify", "--m", "2", "--depth", "12"]);
    assert!(stdout(&o).contains("PASS golden edge set"));
    let o = run(&[
        "verify",
        "--m",
        "3",
        "--depth",
        "8",
        "--inject-fault",
        "label",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL label correspondence: rank 8, index"));
}

#[test]
fn oracle_brackets() {
    let v = json(&run(&[
        "oracle",
        "--m",
        "2",
        "--p1",
        "1/2",
        "--interval",
        "0",
        "d1",
        "--depth",
        "16",
    ]));
    let (lo, hi) = (
        v["lower"]["decimal"].as_str().unwrap(),
        v["upper"]["decimal"].as_str().unwrap(),
    );
    assert!(
        lo <= "0.666666666667" && "0.666666666666" <= hi,
        "{lo} {hi}"
    );
    let v = json(&run(&[
        "oracle",
        "--m",
        "2",
        "--p1",
        "1/2",
        "--interval",
        "0",
        "1",
        "--depth",
        "6",
    ]));
    assert_eq!(v["lower"]["exact"], "1/1");
    assert_eq!(v["upper"]["exact"], "1/1");
    let o = run(&[
        "oracle",
        "--m",
        "2",
        "--p1",
        "1/2",
        "--interval",
        "0",
        "0.12",
        "--depth",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn graph_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.txt");
    let o = run(&["graph", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().all(|l| l.split(' ').count() == 2));
}
