//! End-to-end tests of the command-line interface: exact output for pinned
//! commands, exit codes, thread-count determinism, and cache behavior.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hecke-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn pinned_outputs() {
    let out = hecke(&["kl", "--y", "2", "--w", "2323"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"poly\":[[0,1]]}\n");

    let out = hecke(&["gamma", "--x", "10", "--y", "10", "--z", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"gamma\":1}\n");

    let out = hecke(&["star", "23", "right", "--w", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"string\":{\"members\":[\"2\",\"23\",\"232\"],\"position\":1,\"star\":\"232\"}}\n"
    );

    let out = hecke(&["star", "23", "left", "--w", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"string\":null}\n");

    let out = hecke(&["cell", "locate", "--w", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"coords\":null}\n");

    let out = hecke(&["jprod", "--x", "12013", "--y", "01321"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cell"], "D");
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_report_shape() {
    let out = hecke(&["verify", "lemma3.5", "--kmax", "1", "--lmax", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["instances"], 4);
    assert_eq!(v["cases"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "nosuch"][..],
        &["kl", "--y", "zz", "--w", "2"],
        &["gamma", "--x", "2", "--y", "2", "--z", "2"],
        &["cell", "enum", "Q"],
        &["star", "01", "right", "--w", "2"],
        &["jprod", "--x", "2", "--y", "2"],
    ] {
        let out = hecke(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(stdout(&out).is_empty(), "no JSON on usage error for {args:?}");
        assert!(!out.stderr.is_empty(), "diagnostic expected for {args:?}");
    }
}

#[test]
fn budget_refusal_and_force() {
    // (0132)^5·013 is reduced of length 23, one over the budget.
    let long = "01320132013201320132013";
    let out = hecke(&["fprod", "--x", long, "--y", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hecke(&["fprod", "--x", long, "--y", "0", "--force"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["basis"], "T");
}

#[test]
fn thread_count_does_not_change_output() {
    let base = hecke(&["verify", "strings15", "--sample", "4", "--threads", "1"]);
    assert!(base.status.success());
    for threads in ["2", "4"] {
        let out = hecke(&["verify", "strings15", "--sample", "4", "--threads", threads]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), stdout(&base), "threads={threads}");
    }
}

#[test]
fn cache_roundtrip_and_corruption() {
    let cache = temp_path("cache.json");
    let _ = std::fs::remove_file(&cache);
    let args = ["kl", "--y", "121", "--w", "12321", "--cache", cache.to_str().unwrap()];
    let cold = hecke(&args);
    assert!(cold.status.success());
    assert!(cache.exists(), "cache file written");

    let warm = hecke(&args);
    assert!(warm.status.success());
    assert_eq!(stdout(&warm), stdout(&cold));

    std::fs::write(&cache, "not json at all").unwrap();
    let damaged = hecke(&args);
    assert!(damaged.status.success());
    assert_eq!(stdout(&damaged), stdout(&cold));

    // The environment variable takes precedence over the flag.
    let out = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(["kl", "--y", "121", "--w", "12321", "--cache", "/nonexistent/dir/x.json"])
        .env("HECKE_CACHE", cache.to_str().unwrap())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), stdout(&cold));
    let _ = std::fs::remove_file(&cache);
}

#[test]
fn golden_shipped_suite_passes() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden");
    let out = hecke(&["golden", dir.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true, "failures: {}", v["failures"]);
    assert!(out.status.success());
    assert!(v["cases"].as_u64().unwrap() >= 10);
}

#[test]
fn golden_detects_tampering_and_empty_dirs() {
    let dir = temp_path("golden-tampered");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("case.json"),
        "{\"command\": \"kl --y 2 --w 2323\", \"expected\": {\"poly\": [[0,2]]}}",
    )
    .unwrap();
    let out = hecke(&["golden", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["failures"].as_array().unwrap().len(), 1);
    let _ = std::fs::remove_dir_all(&dir);

    let empty = temp_path("golden-empty");
    let _ = std::fs::remove_dir_all(&empty);
    std::fs::create_dir_all(&empty).unwrap();
    let out = hecke(&["golden", empty.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["cases"], 0);
    let _ = std::fs::remove_dir_all(&empty);
}
