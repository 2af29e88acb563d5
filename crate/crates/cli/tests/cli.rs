use rootlift::jacobi::theta_r;
use rootlift::series::serialize::SeriesRepr;
use rootlift::series::PuiseuxSeries;
use rootlift::Q;
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rootlift"));
    cmd.env_remove("ROOTLIFT_CACHE_DIR");
    match cache {
        Some(d) => cmd.arg("--cache-dir").arg(d),
        None => cmd.arg("--no-cache"),
    };
    cmd.args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn classify_lists_the_eight_systems() {
    let out = run(None, &["classify", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["command"], "classify");
    let rows = v["checks"][0]["data"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().any(|r| r["root_system"] == "B2+G2" && r["rank"] == 4));
}

#[test]
fn bad_arguments_exit_with_usage_error() {
    assert_eq!(run(None, &["classify", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(None, &["verify", "-r", "E8"]).status.code(), Some(2));
    assert_eq!(run(None, &["verify", "-r", "A5"]).status.code(), Some(2));
    assert_eq!(run(None, &["block", "--form", "1,x"]).status.code(), Some(2));
}

#[test]
fn verify_a4_at_low_precision() {
    let out = run(None, &["--json", "verify", "-r", "A4", "--q-prec", "2", "--xi-prec", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    let c = &v["checks"][0];
    assert_eq!(c["root_system"], "A4");
    assert_eq!(c["verdict"], "pass");
    assert!(c["compared"].as_u64().unwrap() > 0);
    assert!(c.get("first_mismatch").is_none());
    assert_eq!(c["data"]["mismatches"], 0);
    assert_eq!(v["config"]["q_prec"], 2);
}

#[test]
fn warm_cache_gives_identical_json() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "suite", "--quick", "-r", "A4,3A2"];
    let cold = run(Some(dir.path()), &args);
    assert!(cold.status.success(), "{}", String::from_utf8_lossy(&cold.stdout));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = run(Some(dir.path()), &args);
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = run(None, &args);
    assert_eq!(cold.stdout, uncached.stdout);

    let stats = json(&run(Some(dir.path()), &["--json", "--stats", "verify", "-r", "A4", "--q-prec", "2", "--xi-prec", "2"]));
    assert!(stats["stats"]["cache_hits"].as_u64().unwrap() >= 1);
    assert_eq!(stats["stats"]["cache_misses"], 0);
}

#[test]
fn unusable_cache_dir_is_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not-a-dir");
    std::fs::write(&file, b"x").unwrap();
    let out = run(Some(&file), &["--json", "--stats", "theta-r", "-r", "3A2", "--q-prec", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(json(&out)["stats"]["cache_enabled"], false);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "theta-r", "-r", "A4", "--q-prec", "2"];
    let first = run(Some(dir.path()), &args);
    for e in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(e.unwrap().path(), b"{").unwrap();
    }
    let second = run(Some(dir.path()), &args);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn theta_r_series_round_trips_through_json() {
    let out = run(None, &["--json", "theta-r", "-r", "3A2", "--q-prec", "3"]);
    let v = json(&out);
    let repr: SeriesRepr = serde_json::from_value(v["checks"][0]["data"]["series"].clone()).unwrap();
    let s = PuiseuxSeries::try_from(&repr).unwrap();
    let direct = theta_r(&"3A2".parse().unwrap(), Q::from_integer(3)).unwrap();
    assert_eq!(s.q_prec(), direct.series.q_prec());
    assert!(s.agrees_with(&direct.series));
    assert_eq!(s.num_terms(), direct.series.num_terms());
}

#[test]
fn block_from_forms_and_table() {
    let v = json(&run(None, &["--json", "block", "--eta-power", "-1", "--form", "1", "--q-prec", "3"]));
    assert_eq!(v["checks"][0]["data"]["weight"], "0/1");
    assert_eq!(v["checks"][0]["data"]["q_order"], "1/12");

    let bad = run(None, &["block", "--table", "A1+B3", "--x", "1,1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL block [A1+B3]"));
}

#[test]
fn text_report_ends_with_tally() {
    let out = run(None, &["invariants", "-r", "8A1,A4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS invariants [8A1]: dimension 2"));
    assert!(text.contains("PASS invariants [A4]: dimension 1"));
    assert!(text.ends_with("pass: 2 of 2 checks passed\n"));
}
