use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kneading"))
        .args(args)
        .env("KNEADING_CACHE_DIR", cache)
        .env_remove("KNEADING_CONFIG")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn kneading_of_a_component() {
    let out = run(&["kneading", "1/7", "2/7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("per(H) = 3"), "{text}");
    assert!(text.contains("K(H) = BBA"), "{text}");
    assert!(text.contains("K̂(H) = BB"), "{text}");
}

#[test]
fn kneading_of_an_angle() {
    let v = json(&["kneading", "1/3"]);
    assert_eq!(v["schema"], "kneading.kneading/1");
    assert_eq!(v["kneading"], "(B∘)*");
}

#[test]
fn components_table_and_json() {
    let text = stdout(&run(&["components", "--max-period", "3"]));
    assert_eq!(text.lines().count(), 1 + 1 + 3);
    let v = json(&["components", "--max-period", "4"]);
    assert_eq!(v["schema"], "kneading.components/1");
    assert_eq!(v["components"].as_array().unwrap().len(), 1 + 3 + 6);
}

#[test]
fn conspicuous_family() {
    let v = json(&["conspicuous", "13/63", "14/63"]);
    assert_eq!(v["schema"], "kneading.conspicuous/1");
    let periods: Vec<u64> = v["conspicuous"].as_array().unwrap().iter().map(|c| c["period"].as_u64().unwrap()).collect();
    assert_eq!(periods[0], 6);
    assert!(periods.windows(2).all(|w| w[0] > w[1]), "{periods:?}");
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "2/5", "3/5"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = run(&["verify", "1/31", "10/31"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
    let garbage = run(&["kneading", "one/third"]);
    assert_eq!(garbage.status.code(), Some(2));
    let v = json(&["verify", "3/15", "4/15"]);
    assert_eq!(v["schema"], "kneading.verify/1");
    assert!(v["checks"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_all_sweep() {
    let v = json(&["verify", "--all", "--max-period", "5"]);
    assert_eq!(v["schema"], "kneading.sweep/1");
    assert_eq!(v["components"], 1 + 3 + 6 + 15);
    assert_eq!(v["failures"], 0);
}

#[test]
fn disc_membership() {
    let text = stdout(&run(&["disc", "1/3", "2/3", "1/6"]));
    assert!(text.contains("first entry m = 1"), "{text}");
    assert!(text.contains("Ξ(H)"), "{text}");
    let v = json(&["disc", "1/3", "2/3", "0"]);
    assert_eq!(v["schema"], "kneading.disc/1");
    assert_eq!(v["in_disc"], false);
    assert!(v["first_entry"].is_null());
}

#[test]
fn marker_decomposition() {
    let text = stdout(&run(&["marker", "3/7", "4/7", "11/14", "--backtrack"]));
    assert!(text.contains("(⋆BA)*"), "{text}");
    assert!(text.contains("backtracking parse:"), "{text}");
    let v = json(&["marker", "1/3", "2/3", "1/6"]);
    assert_eq!(v["schema"], "kneading.marker/1");
    assert!(v.get("audit").is_none());
    let v = json(&["marker", "1/3", "2/3", "1/6", "--backtrack", "40"]);
    assert!(v.get("audit").is_some());
}

#[test]
fn render_svg() {
    let text = stdout(&run(&["render", "1/7", "2/7", "--size", "200"]));
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"), "{}", &text[..80.min(text.len())]);
    assert!(text.contains("version=\"1.1\""));
    assert!(text.trim_end().ends_with("</svg>"));
}

#[test]
fn report_matches_golden_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let first = run_in(dir.path(), &["report"]);
    assert!(first.status.success());
    assert_eq!(stdout(&first), include_str!("golden/appendix_a.txt"));
    let second = run_in(dir.path(), &["report"]);
    assert_eq!(first.stdout, second.stdout);
    let v = json(&["report"]);
    assert_eq!(v["schema"], "kneading.report/1");
    assert_eq!(v["examples"].as_array().unwrap().len(), 4);
}

#[test]
fn out_file_and_explicit_pool() {
    let dir = tempfile::tempdir().unwrap();
    let pool = dir.path().join("pool.json");
    let out = run_in(dir.path(), &["--format", "json", "--out", pool.to_str().unwrap(), "components", "--max-period", "7"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&pool).unwrap()).unwrap();
    assert_eq!(saved["max_period"], 7);

    let empty = tempfile::tempdir().unwrap();
    let with_pool = run_in(empty.path(), &["--pool", pool.to_str().unwrap(), "conspicuous", "13/63", "14/63"]);
    assert!(with_pool.status.success(), "{}", String::from_utf8_lossy(&with_pool.stderr));
    assert_eq!(stdout(&with_pool), stdout(&run(&["conspicuous", "13/63", "14/63"])));
}
