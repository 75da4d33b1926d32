use std::process::{Command, Output};

use serde_json::Value;

use slopecount::core::pointcount::Classification;
use slopecount::core::treepoly::tau_eval;
use slopecount::core::{EdgeWeighting, IdealSpec, ZeroTester};
use slopecount::suites::SuiteReport;
use slopecount::CountReport;

fn slopecount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slopecount"))
        .args(args)
        .env_remove("SLOPECOUNT_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = slopecount(args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn count_zeros_examples() {
    for (args, zeros) in [
        (["--n", "5", "--q", "2", "--ideal", "J"], 472),
        (["--n", "3", "--q", "2", "--ideal", "I"], 8),
        (["--n", "4", "--q", "3", "--ideal", "I"], 423),
    ] {
        let mut full = vec!["count-zeros"];
        full.extend(args);
        let v = json(&full);
        assert_eq!(v["zeros"], zeros, "{args:?}");
        assert_eq!(v["ideal"], args[5]);
        for field in ["n", "q", "total", "elapsed_ms"] {
            assert!(v.get(field).is_some(), "missing {field}");
        }
    }
}

#[test]
fn count_zeros_csv() {
    let out = slopecount(&[
        "count-zeros",
        "--n",
        "4",
        "--q",
        "2",
        "--ideal",
        "J",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,q,ideal,zeros,total,elapsed_ms"));
    assert!(lines.next().unwrap().starts_with("4,2,J,52,64,"));
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "2:4:100101"]);
    assert_eq!(v["zero_i"], false);
    assert_eq!(v["is_cograph"], false);
    assert_eq!(v["edges"], serde_json::json!([[1, 2], [2, 3], [3, 4]]));

    let v = json(&["classify", "2:4:000000"]);
    assert_eq!(v["zero_i"], true);
    assert_eq!(v["is_cograph"], true);

    let point = "3:4:001120";
    let v = json(&["classify", point]);
    let a: EdgeWeighting = point.parse().unwrap();
    let tester = ZeroTester::new(4, 3, IdealSpec::I).unwrap();
    assert_eq!(tester.wheels().len(), 4);
    let direct = tester
        .wheels()
        .iter()
        .all(|w| tau_eval(w, &a).unwrap().is_zero());
    assert_eq!(v["zero_i"], direct);
    assert_eq!(v["zero_j"], direct);
    assert!(v.get("is_cograph").is_none());
}

#[test]
fn classify_parse_failure_reports_position() {
    let out = slopecount(&["classify", "2:4:10x101"]);
    assert_eq!(out.status.code(), Some(65));
    assert!(stderr(&out).contains("position 6"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());

    let out = slopecount(&["classify", "2:4:10010"]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "--theorem", "1", "--n", "4"]);
    assert_eq!(v["passed"], true);
    for key in ["zeros_i", "zeros_j", "cographs", "c5_free_classes"] {
        assert_eq!(v["counts"][key], 52, "{key}");
    }
    let v = json(&["verify", "--theorem", "1", "--n", "1"]);
    assert_eq!(v["passed"], true);
    assert!(v["counts"].as_object().unwrap().values().all(|c| c == 1));

    let v = json(&["verify", "--theorem", "cog5cyc", "--n", "4"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["counts"]["graphs"], 1024);
    assert_eq!(v["checks"][0]["checked"], 1024 * 16);
}

#[test]
fn verify_text_lists_sub_checks() {
    let out = slopecount(&[
        "verify",
        "--theorem",
        "1",
        "--n",
        "3",
        "--format",
        "text",
        "--paranoid",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS zero iff cograph"));
    assert!(text.contains("cographs = 8"));
    assert_eq!(text.lines().last(), Some("PASS"));
}

#[test]
fn verify_out_of_budget() {
    let out = slopecount(&["verify", "--theorem", "1", "--n", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--override-budget"));
}

#[test]
fn table_rows_and_totals() {
    let out = slopecount(&["table", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"(5,1)\",36,0\n"));
    assert!(text.contains("\"(3,2,1)\",144,216\n"));
    assert!(text.ends_with("Total,423,306\n"));

    let v = json(&["table", "--wheel", "W(1;2,3,4)"]);
    assert_eq!(v["zeros"], 423);
    assert_eq!(v["total"], 729);
    assert_eq!(v["per_type"].as_array().unwrap().len(), 7);
}

#[test]
fn table_rejects_bad_wheel() {
    let out = slopecount(&["table", "--wheel", "W(1;2,3,9)"]);
    assert_eq!(out.status.code(), Some(64));
    let out = slopecount(&["table", "--wheel", "W(1;2,3)"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn export_poly_examples() {
    let lines = |args: &[&str]| {
        let out = slopecount(args);
        assert_eq!(out.status.code(), Some(0));
        stdout(&out).lines().count()
    };
    assert_eq!(lines(&["export-poly", "--n", "4", "--ideal", "J"]), 4);
    assert_eq!(lines(&["export-poly", "--n", "3"]), 0);
    assert_eq!(lines(&["export-poly", "--n", "5", "--ideal", "I"]), 35);
    let out = slopecount(&["export-poly", "--n", "3"]);
    assert!(out.stdout.is_empty());
    let text = stdout(&slopecount(&[
        "export-poly",
        "--n",
        "4",
        "--format",
        "text",
    ]));
    assert!(text.starts_with("(m_1_2-m_2_3)*"));
}

#[test]
fn usage_errors() {
    for args in [
        &["count-zeros", "--n", "4", "--q", "4"][..],
        &["count-zeros", "--n", "0"],
        &["count-zeros", "--n", "13"],
        &["count-zeros"],
        &["count-zeros", "--n", "4", "--threads", "0"],
        &["count-zeros", "--n", "4", "--ideal", "K"],
        &["count-zeros", "--n", "4", "--bogus"],
        &["verify", "--theorem", "2"],
        &["frobnicate"],
        &[],
    ] {
        let out = slopecount(args);
        assert_eq!(out.status.code(), Some(64), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(slopecount(&["--help"]).status.code(), Some(0));
    assert_eq!(slopecount(&["--version"]).status.code(), Some(0));
}

#[test]
fn budget_refusal() {
    let out = slopecount(&["count-zeros", "--n", "8", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("22876792454961"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn output_does_not_depend_on_threads() {
    for args in [
        &["count-zeros", "--n", "6", "--q", "2", "--ideal", "I"][..],
        &["count-zeros", "--n", "5", "--q", "3", "--ideal", "J"],
        &["table", "--n", "5", "--q", "2"],
    ] {
        let runs: Vec<Value> = ["1", "3", "8"]
            .iter()
            .map(|t| {
                let mut full = args.to_vec();
                full.extend(["--threads", t]);
                without_timing(json(&full))
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_slopecount"))
        .args(["count-zeros", "--n", "5", "--ideal", "J"])
        .env("SLOPECOUNT_THREADS", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["zeros"], 472);
}

#[test]
fn json_outputs_round_trip() {
    let out = stdout(&slopecount(&["count-zeros", "--n", "4", "--q", "3"]));
    let report: CountReport = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap() + "\n", out);

    let out = stdout(&slopecount(&["table"]));
    let report: CountReport = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap() + "\n", out);

    let out = stdout(&slopecount(&[
        "verify",
        "--theorem",
        "generalize",
        "--q",
        "3",
    ]));
    let report: SuiteReport = serde_json::from_str(&out).unwrap();
    assert!(report.passed);
    assert_eq!(serde_json::to_string(&report).unwrap() + "\n", out);

    for point in ["2:5:1001011010", "3:4:001120", "5:4:432100"] {
        let out = stdout(&slopecount(&["classify", point]));
        let c: Classification = serde_json::from_str(&out).unwrap();
        assert_eq!(c.point, point);
        assert_eq!(serde_json::to_string(&c).unwrap() + "\n", out);
    }
}

#[test]
fn cache_hits_and_version_keying() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.jsonl");
    let cache = path.to_str().unwrap();
    let args = ["count-zeros", "--n", "5", "--ideal", "J", "--cache", cache];
    let first = stdout(&slopecount(&args));
    let second = stdout(&slopecount(&args));
    assert_eq!(first, second);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);

    // An entry written by another version is never served.
    let stale = std::fs::read_to_string(&path)
        .unwrap()
        .replace(env!("CARGO_PKG_VERSION"), "0.0.0-old")
        .replace("\"zeros\":472", "\"zeros\":999");
    std::fs::write(&path, stale).unwrap();
    let v: Value = serde_json::from_str(&stdout(&slopecount(&args))).unwrap();
    assert_eq!(v["zeros"], 472);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);

    // Different ideal, different key.
    let v = json(&["count-zeros", "--n", "5", "--ideal", "I", "--cache", cache]);
    assert_eq!(v["ideal"], "I");
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 3);
}
