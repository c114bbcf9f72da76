use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use weakper_core::search::ConjectureScan;
use weakper_core::{VerifyReport, Witness};

fn weakper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakper"))
        .args(args)
        .env_remove("WEAKPER_CACHE")
        .output()
        .expect("binary runs")
}

fn weakper_env(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakper"))
        .args(args)
        .env("WEAKPER_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn constructive_verify_round_trips() {
    let o = weakper(&["verify", "--field", "3^1", "--n", "2", "--mode", "constructive"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.summary.total, r.summary.decomposable, r.summary.failed), (9, 9, 0));
    r.reverify().unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", stdout(&o));
}

#[test]
fn brute_reports_round_trip_under_both_notions() {
    for potency in ["definition", "semisimple"] {
        let o = weakper(&["verify", "--field", "2^1", "--n", "2", "--mode", "brute", "--potency", potency]);
        assert_eq!(o.status.code(), Some(0));
        let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(r.records.len(), 4);
        r.reverify().unwrap();
    }
}

#[test]
fn sets_example() {
    let o = weakper(&["sets", "--field", "2^1", "--n", "2", "--ext-bound", "2", "--potency", "semisimple"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["st"], serde_json::json!([1]));
    assert_eq!(v["sr"]["elements"], serde_json::json!([0, 1]));
    assert_eq!(v["containments"]["pass"], Value::Bool(true));

    let o = weakper(&["sets", "--field", "2^1", "--n", "2", "--ext-bound", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["st"], serde_json::json!([0, 1]));
}

#[test]
fn decompose_example_emits_a_valid_witness() {
    for mode in ["constructive", "brute", "commuting"] {
        let o = weakper(&["decompose", "--field", "5^1", "--poly", "1,3,1", "--mode", mode]);
        assert_eq!(o.status.code(), Some(0), "{mode}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["status"], "decomposable");
        let w: Witness = serde_json::from_value(v["witness"].clone()).unwrap();
        w.verify().unwrap();
        assert_eq!(w.companion_coeffs, vec![1, 3]);
    }
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["verify", "--field", "2^2", "--n", "2", "--mode", "brute"];
    let cold = weakper(&args);
    let mut with_cache = args.to_vec();
    with_cache.extend(["--cache", cache]);
    let store = weakper(&with_cache);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let mut hit_args = with_cache.clone();
    hit_args.extend(["--jobs", "1"]);
    let hit = weakper(&hit_args);
    assert_eq!(cold.stdout, store.stdout);
    assert_eq!(cold.stdout, hit.stdout);

    let mut csv = with_cache.clone();
    csv.extend(["--format", "csv"]);
    let csv_hit = stdout(&weakper(&csv));
    assert!(csv_hit.starts_with("field,n,mode,potency,total,decomposable,failed,version\nGF(2^2),2,brute,definition,16,"));
}

#[test]
fn env_cache_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = weakper_env(
        &["conjecture", "--field", "3^1", "--n", "2", "--cache", flag_dir.path().to_str().unwrap()],
        env_dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 0);
    let again = weakper_env(&["conjecture", "--field", "3^1", "--n", "2"], env_dir.path());
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--field", "3^1", "--n", "2", "--cache", dir.path().to_str().unwrap()];
    let first = weakper(&args);
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{not json").unwrap();
    let second = weakper(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn conjecture_scan_for_scalars_is_empty() {
    let o = weakper(&["conjecture", "--field", "5^1", "--n", "1"]);
    let scan: ConjectureScan = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(scan.non_decomposable.is_empty());
    assert_eq!(scan.report.records.len(), 5);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = weakper(&["field-info", "--field", "2^2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["subfields"].as_array().unwrap().len(), 2);
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["verify", "--field", "6^1"][..],
        &["verify", "--field", "2^2/1,0,1"],
        &["verify", "--field", "2^1", "--n", "2"],
        &["decompose", "--field", "3^1", "--poly", "1,2"],
        &["decompose", "--field", "3^1", "--poly", "1,0,7"],
        &["decompose", "--field", "3^1", "--poly", "1,1", "--n", "2"],
        &["verify", "--brute-cap", "0"],
        &["verify", "--mode", "sideways"],
    ] {
        assert_eq!(weakper(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn resource_bounds_exit_with_three() {
    let o = weakper(&["verify", "--field", "2^2", "--n", "4", "--mode", "brute"]);
    assert_eq!(o.status.code(), Some(3));
    let o = weakper(&["verify", "--field", "2^1", "--n", "3", "--mode", "brute", "--brute-cap", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn failed_lemma_exits_with_one() {
    let o = weakper(&["lemmas", "--field", "2^1", "--n", "2", "--ext-bound", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = v["lemmas"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|l| l["status"] == "fail")
        .map(|l| l["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["omega-alpha"]);

    let o = weakper(&["lemmas", "--field", "5^1", "--n", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 11);
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS") || l.starts_with("SKIP")));
}

#[test]
fn lemma_runs_are_reproducible() {
    let a = stdout(&weakper(&["lemmas", "--field", "3^1", "--n", "2", "--seed", "1"]));
    let b = stdout(&weakper(&["lemmas", "--field", "3^1", "--n", "2", "--seed", "1"]));
    assert_eq!(a, b);
}
