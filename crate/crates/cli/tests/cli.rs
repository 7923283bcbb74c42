use std::io::Cursor;
use std::path::Path;
use std::process::{Command, Output};

use screengame_cli::{run, OUT_DIR_ENV};

fn screengame(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_screengame"))
        .args(args)
        .env(OUT_DIR_ENV, dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Runs the library entry point with `input` as stdin.
fn session(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["screengame"];
    argv.extend_from_slice(args);
    let mut inp = Cursor::new(input.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut inp, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn play_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = screengame(
        dir.path(),
        &["play", "--ruleset", "d", "--length", "w+1", "--one", "grid", "--two", "halving-omega-plus-1", "--innings", "8"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: two-wins-covered"));

    let o = screengame(dir.path(), &["play", "--ruleset", "c", "--length", "2", "--one", "grid", "--two", "chain-puncture"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: two-wins-covered"));

    let o = screengame(dir.path(), &["play", "--ruleset", "d", "--length", "2", "--one", "grid", "--two", "chain-puncture"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not discrete"));
}

#[test]
fn transcripts_are_deterministic_and_end_with_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["play", "--ruleset", "discrete", "--length", "w", "--one", "main-compact", "--two", "greedy", "--innings", "6"];
    let read = || {
        let o = screengame(dir.path(), &args);
        assert_eq!(o.status.code(), Some(0));
        let path = stdout(&o).lines().find_map(|l| l.strip_prefix("transcript: ").map(String::from)).unwrap();
        std::fs::read(path).unwrap()
    };
    let (a, b) = (read(), read());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 7);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["verdict"], "one-wins-certified");
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let toml = dir.path().join("match.toml");
    std::fs::write(&toml, "ruleset = \"discrete\"\nlength = \"1\"\none = \"grid\"\ntwo = \"cantor-oneshot\"\ntarget = \"cantor\"\ninnings = 1\n").unwrap();
    let out = dir.path().join("nested/run.jsonl");
    let o = screengame(dir.path(), &["play", "--config", toml.to_str().unwrap(), "--out", out.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "two-wins-covered");
    assert!(out.exists());
    // flags override the file
    let o = screengame(dir.path(), &["play", "--config", toml.to_str().unwrap(), "--two", "empty", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_ne!(v["verdict"], "two-wins-covered");
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["play", "--length", "w", "--one", "grid", "--two", "nobody"],
        vec!["play", "--length", "w", "--one", "grid"],
        vec!["play", "--length", "w^", "--one", "grid", "--two", "halving"],
        vec!["demo", "nope"],
        vec!["frobnicate"],
    ] {
        let o = screengame(dir.path(), &args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn banach_mazur_ruleset() {
    let dir = tempfile::tempdir().unwrap();
    let o = screengame(
        dir.path(),
        &["play", "--ruleset", "bm", "--one", "main-gdelta", "--two", "bm-first-category:dyadic", "--innings", "8"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("avoidance holds: true"));
}

#[test]
fn demos_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["inequivalence", "alpha-minus", "rationals"] {
        let o = screengame(dir.path(), &["demo", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(!stdout(&o).contains("FAILED"));
    }
    let table = stdout(&screengame(dir.path(), &["demo", "alpha-minus"]));
    for row in ["w*2  ->  w+1", "w^2*1  ->  w^2*1", "w+5  ->  w+1"] {
        assert!(table.contains(row), "{table}");
    }
    let o = screengame(dir.path(), &["check", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.trim_start().starts_with("ok")).count(), 5);
}

#[test]
fn analyses() {
    let dir = tempfile::tempdir().unwrap();
    let o = screengame(dir.path(), &["analyze", "escape", "--two", "countable:triadic", "--witness", "1/2", "--depth", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["revalidated"], true);
    assert_eq!(v["search"]["indices"].as_array().unwrap().len(), 5);

    let o = screengame(dir.path(), &["analyze", "core", "--two", "first-member", "--depth", "10"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["core"], "[0,1/4096]");

    let o = screengame(dir.path(), &["analyze", "dense", "--family", "(0,1/4);(1/2,3/4)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["interval"], "(1/4,1/2)");
}

#[test]
fn interactive_two_is_refereed_before_moving() {
    let input = "(0,1\n(1/8,1/4);(1/4,3/8)\n(1/10,2/10);(3/10,4/10)\n";
    let (code, out, _) = session(&["interactive", "--as", "two", "--length", "1", "--one", "grid"], input);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("grammar:"));
    assert!(out.contains("closures of members 0 and 1 share 1/4"), "{out}");
    assert!(out.contains("accepted"));
    assert!(out.contains("verdict:"));
}

#[test]
fn interactive_one_must_cover() {
    let input = "(0,1/2)\n[0,1/2);(1/3,1]\n";
    let (code, out, _) = session(&["interactive", "--as", "one", "--length", "1", "--two", "halving"], input);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("not a cover: 1/2 is uncovered") || out.contains("is uncovered"), "{out}");
    assert!(out.contains("TWO answers:"));
    assert!(out.contains("verdict:"));
}

#[test]
fn interactive_quit_and_end_of_input() {
    let (code, out, _) = session(&["interactive", "--as", "two", "--length", "w", "--one", "grid"], "quit\n");
    assert_eq!(code, 0);
    assert!(out.contains("abandoned"));
    let (code, _, _) = session(&["interactive", "--as", "one", "--length", "w", "--two", "halving"], "");
    assert_eq!(code, 0);
}
