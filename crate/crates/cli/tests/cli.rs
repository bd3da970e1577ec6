use std::io::Write;
use std::process::{Command, Output, Stdio};

fn graphgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphgame"))
        .args(args)
        .env_remove("GRAPHGAME_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_prints_outcome() {
    let o = graphgame(&["solve", "--game", "clique", "--base", "K4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "a=2 b=2 s=0 winner=P2");

    let o = graphgame(&["solve", "--game", "vc", "--base", "K5", "--bias", "1,2"]);
    assert!(stdout(&o).trim().ends_with("winner=P2"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(graphgame(&["solve", "--game", "nope", "--base", "K4"]).status.code(), Some(2));
    assert_eq!(graphgame(&["solve", "--game", "clique", "--base", "X4"]).status.code(), Some(2));
    assert_eq!(graphgame(&["solve", "--game", "clique", "--base", "K12"]).status.code(), Some(3));
    assert_eq!(graphgame(&["--max-states", "1000", "solve", "--game", "vc", "--base", "C15"]).status.code(), Some(3));
}

#[test]
fn table_marks_skipped_rows() {
    let o = graphgame(&["--max-states", "5000", "table", "--m-range", "5..=6"]);
    let out = stdout(&o);
    assert!(o.status.success());
    assert_eq!(out.lines().next(), Some("m,col_a,col_b,delta_a,delta_b,svc,vc_a,vc_b"));
    assert!(out.contains("5,2,1,2,1,2,2,0"), "{out}");

    let o = graphgame(&["--max-states", "10", "table", "--m-range", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("20,skipped"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
}

#[test]
fn table_game_subset() {
    let o = graphgame(&["table", "--m-range", "3", "--games", "vc"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("3,,,,,1,1,0"));
}

#[test]
fn cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_graphgame"))
            .args(["solve", "--game", "star", "--base", "C9"])
            .env("GRAPHGAME_CACHE", &path)
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(stdout(&first), stdout(&second));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1, "second run should hit the cache");
    assert!(text.contains("\"kind\":\"Star\"") && text.contains("\"a\":3"), "{text}");
}

#[test]
fn generate_counts_layers() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphgame(&["generate", "--game", "clique", "--base", "K4", "--dump", dir.path().to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.starts_with("ply  0: 1\n"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("total: ")));
    assert!(dir.path().join("layer_06.bin").exists());
}

#[test]
fn verify_strategy_command() {
    let o = graphgame(&["verify-strategy", "--strategy", "bob13", "--n", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("VERIFIED"), "{}", stdout(&o));
    let o = graphgame(&["verify-strategy", "--strategy", "vc-mirror", "--n", "5"]);
    assert!(stdout(&o).contains("VERIFIED"), "{}", stdout(&o));
}

#[test]
fn play_against_engine() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_graphgame"))
        .args(["play", "--game", "clique", "--base", "K3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // Surplus and illegal lines are re-prompted; one of the last two edges is free.
    child.stdin.take().unwrap().write_all(b"0 1\n9 9\n0 1\n0 2\n1 2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.contains("try again"), "{out}");
    assert!(out.contains("final a="), "{out}");
}

#[test]
fn play_reports_truncated_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_graphgame"))
        .args(["play", "--game", "clique", "--base", "K4"])
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdin.take());
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let o = graphgame(&["selftest"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
}
