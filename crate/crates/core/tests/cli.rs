use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn freetl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freetl"))
        .args(args)
        .env_remove("FREETL_CACHE_DIR")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("freetl-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn dims_json_rows() {
    let out = freetl(&["--max-len", "4", "dims"]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 31);
    let alt = rows.iter().find(|r| r["word"] == "+-+-").unwrap();
    assert_eq!(alt["oriented_dim"], 2);
    assert_eq!(alt["unshaded_dim"], 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["gram", "+x"][..],
        &["--max-len", "13", "dims"],
        &["--delta", "abc", "dims"],
        &["--delta", "1", "jw", "3"],
        &["--delta", "1", "verify"],
        &["--delta", "symbolic", "minimal", "+-"],
        &["bogus"],
    ] {
        let out = freetl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn gram_accepts_leading_minus() {
    let out = freetl(&["--delta", "2", "gram", "-+-+"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["basis_size"], 2);
}

#[test]
fn injected_fault_fails_verify() {
    let ok = freetl(&["--max-len", "4", "verify"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = freetl(&["--max-len", "4", "verify", "--inject-fault", "gram"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["pass"], false);
}

#[test]
fn verify_output_is_deterministic() {
    let a = freetl(&["--seed", "11", "verify"]);
    let b = freetl(&["--seed", "11", "verify"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = scratch("out");
    let path = dir.join("jw.csv");
    let out = freetl(&["--format", "csv", "--output", path.to_str().unwrap(), "jw", "2"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("pairs,coeff\n"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_directory_round_trip() {
    let dir = scratch("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_freetl"))
            .args(["--delta", "5/2", "gram", "++--"])
            .env("FREETL_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    assert!(files[0].to_str().unwrap().contains("5_2-ppmm"));
    let second = run();
    assert_eq!(first.stdout, second.stdout);

    // a corrupted entry is ignored and recomputed
    let entry = dir.join(&files[0]);
    std::fs::write(&entry, "{not json").unwrap();
    let third = run();
    assert!(third.status.success());
    assert_eq!(first.stdout, third.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn freeprod_counts() {
    let out = freetl(&["--max-len", "3", "freeprod-count", "--left", "a", "--right", "x,y"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    // alternating words of length 0..=3: 1 + 3 + 4 + 6
    assert_eq!(v["sigma0"].as_array().unwrap().len(), 14);
}
