use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fishbij(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fishbij"))
        .args(args)
        .output()
        .expect("spawn fishbij")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(fishbij(&["count", "fish", "5"]).status.code(), Some(0));
    assert_eq!(fishbij(&["count", "fish", "0"]).status.code(), Some(2));
    assert_eq!(
        fishbij(&["map", "tree-to-fish", "(..x)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fishbij(&["census", "fish", "3", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fishbij(&["census", "fish", "3", "coreSize"]).status.code(),
        Some(2)
    );
    let not_left = fishbij(&["map", "tree-to-fish", "(..(...))"]);
    assert_eq!(not_left.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&not_left.stderr).contains("abscissa -1"));
}

#[test]
fn oracle_cap_is_enforced() {
    let out = Command::new(env!("CARGO_BIN_EXE_fishbij"))
        .args(["list", "fish", "4", "--method", "oracle"])
        .env("FISHBIJ_MAX_ORACLE", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn left_tree_round_trip() {
    let fish = stdout(&fishbij(&["map", "tree-to-fish", "((...)(...).)"]));
    let back = fishbij(&["map", "fish-to-tree", fish.trim()]);
    assert_eq!(stdout(&back).trim(), "((...)(...).)");
}

#[test]
fn marked_round_trip_through_stdin() {
    let marked = stdout(&fishbij(&["map", "tree-to-marked", "(..(...))"]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_fishbij"))
        .args(["map", "marked-to-tree", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(marked.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out).trim(), "(..(...))");
}

#[test]
fn pair_round_trip_through_file() {
    let tailed = stdout(&fishbij(&["map", "pair-to-fish", "(...)", "((...)..)"]));
    let v: serde_json::Value = serde_json::from_str(tailed.trim()).unwrap();
    let path = std::env::temp_dir().join(format!("fishbij-cli-{}.json", std::process::id()));
    std::fs::write(&path, v["fish"].to_string()).unwrap();
    let arg = format!("@{}", path.display());
    let tail = v["tail"].to_string();
    let pair = stdout(&fishbij(&["map", "tails-to-pair", &arg, &tail]));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(
        pair.split_whitespace().collect::<Vec<_>>(),
        ["(...)", "((...)..)"]
    );
}

#[test]
fn verify_reports_counts() {
    let out = fishbij(&["verify", "all", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with(", 0 failed"));
}

#[test]
fn census_csv_is_deterministic() {
    let a = stdout(&fishbij(&[
        "census", "fish", "5", "tails", "finLen", "--format", "csv",
    ]));
    let b = stdout(&fishbij(&[
        "census", "fish", "5", "tails", "finLen", "--format", "csv",
    ]));
    assert_eq!(a, b);
    assert!(a.starts_with("tails,finLen,count\n"));
    let total: u64 = a
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 91);
}
