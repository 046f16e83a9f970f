use std::fs;
use std::process::Command;

use gwloc_cli::{main_with, parse_report, parse_result_record, to_json};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gw").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn value(report: &str, record: usize, name: &str) -> String {
    let r = parse_report(report).unwrap();
    r.results[record].values[name].to_string()
}

#[test]
fn gr_matches_the_oracle_value() {
    let (code, out, _) = run(&["gr", "--n", "4", "--d", "1", "--insert", "1,0", "2,1", "2,2"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, 0, "gr"), "1/1");
    let (code, out, _) = run(&[
        "gr", "--n", "4", "--d", "2", "--insert", "2,2", "--insert", "2,2", "--insert", "2,2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, 0, "gr"), "1/1");
}

#[test]
fn mismatched_codimension_is_zero() {
    let (code, out, _) = run(&["gr", "--n", "4", "--d", "1", "--insert", "1,0", "1,0", "1,0"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, 0, "gr"), "0/1");
}

#[test]
fn invalid_configurations_exit_2() {
    for args in [
        vec!["gr", "--n", "4", "--d", "1", "--insert", "3,0", "1,0", "1,0"],
        vec!["gr", "--n", "4", "--d", "1", "--insert", "0,1"],
        vec!["gr", "--n", "4", "--d", "1", "--m", "2", "--insert", "1,0"],
        vec!["gr", "--n", "2", "--d", "1"],
        vec!["twisted", "--n", "4", "--d", "1"],
        vec!["gr", "--n", "4", "--d", "1", "--d1", "1"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn correspondence_sweeps_and_the_forced_bug_fails() {
    let (code, out, _) = run(&["correspondence", "--n", "4", "--d", "1", "--m", "3"]);
    assert_eq!(code, 0);
    let r = parse_report(&out).unwrap();
    assert!(r.results.len() > 5);
    assert!(r.results.iter().all(|x| x.pass == Some(true)));
    assert!(r.checks[0].pass);

    let (code, out, _) = run(&["correspondence", "--n", "3", "--d", "1", "--m", "3", "--disable-twist"]);
    assert_eq!(code, 4);
    assert!(!parse_report(&out).unwrap().checks[0].pass);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "martin", "--n", "4"],
        vec!["verify", "martin", "--n", "5"],
        vec!["verify", "vanishing", "--n", "4", "--d", "1", "--m", "3"],
        vec!["verify", "census", "--n", "4", "--d", "2", "--m", "1"],
        vec![
            "verify",
            "lambda-independence",
            "--n",
            "3",
            "--d",
            "1",
            "--m",
            "3",
            "--seeds",
            "3",
        ],
        vec!["verify", "edge-lemma"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(parse_report(&out).unwrap().checks.iter().all(|c| c.pass));
    }
}

#[test]
fn vanishing_reports_valuations() {
    let (_, out, _) = run(&["verify", "vanishing", "--n", "4", "--d", "1", "--m", "3"]);
    let r = parse_report(&out).unwrap();
    assert_eq!(r.results[0].weyl_classes, Some(192));
    assert!(r.results[1..]
        .iter()
        .all(|x| x.detail.as_deref().unwrap().contains("t-valuation")));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = [
        "twisted",
        "--n",
        "3",
        "--d1",
        "1",
        "--d2",
        "0",
        "--insert",
        "1,1",
        "1,1",
        "1,0",
        "--t-report",
    ];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let report = parse_report(&a).unwrap();
    assert_eq!(to_json(&report), a);
    assert!(report.results[0].detail.as_deref().unwrap().starts_with("total(t) = "));
    let record = serde_json::to_string(&report.results[0]).unwrap();
    assert_eq!(parse_result_record(&record).unwrap(), report.results[0]);
}

#[test]
fn csv_flattens_results() {
    let (code, out, _) = run(&[
        "gr", "--n", "4", "--d", "1", "--insert", "1,0", "2,1", "2,2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "label,quantity,value,graph_count,weyl_classes,cache,pass,detail"
    );
    assert_eq!(lines[1], "\"Gr(2,4) d=1 [(1,0) (2,1) (2,2)]\",gr,1/1,96,,disabled,,");
}

#[test]
fn enumeration_cache_hits_and_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = [
        "enumerate",
        "--target",
        "gr",
        "--n",
        "4",
        "--d",
        "1",
        "--cache-dir",
        path,
    ];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let first = parse_report(&first).unwrap();
    assert_eq!(first.results[0].graph_count, Some(12));
    assert_eq!(first.results[0].cache.as_deref(), Some("miss"));
    let (_, second, _) = run(&args);
    let second = parse_report(&second).unwrap();
    assert_eq!(second.results[0].cache.as_deref(), Some("hit"));
    assert_eq!(second.results[0].values, first.results[0].values);

    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut bytes = fs::read(&file).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x40;
    fs::write(&file, bytes).unwrap();
    let (code, _, err) = run(&args);
    assert_eq!(code, 6, "{err}");
}

#[test]
fn product_enumeration_count() {
    let (_, out, _) = run(&["enumerate", "--target", "pp", "--n", "4", "--d1", "1", "--d2", "0"]);
    assert_eq!(parse_report(&out).unwrap().results[0].graph_count, Some(24));
}

#[test]
fn binary_exit_codes() {
    let gw = env!("CARGO_BIN_EXE_gw");
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(gw)
        .args(["gr", "--n", "4", "--d", "1", "--insert", "3,0"])
        .env("GW_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let ok = Command::new(gw)
        .args(["enumerate", "--n", "3", "--d", "1"])
        .env("GW_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
