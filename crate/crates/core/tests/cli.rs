//! The `dyck` binary end to end.

use std::process::{Command, Output};

use serde_json::Value;

use dyck_shift::{AlphabetParams, PointWindow};

fn dyck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dyck(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    dyck(args).status.code().unwrap()
}

#[test]
fn reduce_member_measure_count() {
    assert_eq!(stdout(&["reduce", "--m", "3", "a1 a2 b2 b1 a3"]), "a3\n");
    assert_eq!(stdout(&["reduce", "b1 a2 b2 a1"]), "b1 a1\n");
    assert_eq!(stdout(&["reduce", "a1 b1"]), "Λ\n");
    assert_eq!(stdout(&["reduce", "a1 b2"]), "0\n");
    assert_eq!(stdout(&["member", "--m", "2", "a1 b2"]), "false\n");
    assert_eq!(stdout(&["member", "b2 a1 a1"]), "true\n");
    assert!(stdout(&["measure", "--word", "a1 b1"]).starts_with("1/8\n"));
    assert!(stdout(&["measure", "--m", "3", "a1 a2"]).starts_with("1/36\n"));
    assert_eq!(stdout(&["count", "--balanced", "3"]), "40\n");
    assert_eq!(stdout(&["count", "--m", "3", "--balanced", "2"]), "18\n");
    assert_eq!(stdout(&["count", "--length", "2"]), "14\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["reduce", "--m", "2", "a1 a2 b2 b1 a3"]), 2);
    assert_eq!(code(&["reduce", "a1 c1"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["reduce", "--m", "1", "a1"]), 2);
    assert_eq!(code(&["measure", "--word", "a1", "--measure", "plus"]), 2);
    assert_eq!(code(&["sample", "--window", "2:5"]), 2);
    assert_eq!(code(&["--json", "--csv", "count", "--length", "2"]), 2);
    assert_eq!(code(&["count", "--length", "40"]), 2);
}

#[test]
fn sampling_is_deterministic_and_dumps_round_trip() {
    let args = [
        "sample",
        "--measure",
        "tilde",
        "--window",
        "-4:6",
        "--count",
        "6",
        "--seed",
        "3",
    ];
    let text = stdout(&args);
    assert_eq!(text, stdout(&args));
    assert_ne!(
        text,
        stdout(&["sample", "--window", "-4:6", "--count", "6", "--seed", "4"])
    );
    let p = AlphabetParams::new(2).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 6);
    for line in lines {
        let x = PointWindow::parse_dump_line(line, &p).unwrap();
        assert_eq!((x.lo(), x.hi()), (-4, 6));
        assert_eq!(x.dump_line(), line);
    }
}

#[test]
fn json_and_csv_output() {
    let v: Value = serde_json::from_str(&stdout(&[
        "--json",
        "--seed",
        "5",
        "sample",
        "--measure",
        "minus",
        "--window",
        "-2:2",
        "--count",
        "3",
    ]))
    .unwrap();
    assert_eq!(v["tool"], "dyck");
    assert_eq!(v["seed"], 5);
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
    let csv = stdout(&["--csv", "sample", "--count", "2", "--window", "-2:3"]);
    let mut rows = csv.lines();
    assert_eq!(rows.next(), Some("lo,hi,word,truncated"));
    assert!(rows.all(|r| r.starts_with("-2,3,")));
    let v: Value = serde_json::from_str(&stdout(&["--json", "measure", "a1 b1"])).unwrap();
    assert_eq!(v["value"]["exact"], "1/8");
}

#[test]
fn entropy_and_extensions_tables() {
    let table = stdout(&["entropy", "--n", "4"]);
    let rows: Vec<&str> = table.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows[0].starts_with("n\t"));
    assert!(rows[1..].iter().all(|r| r.ends_with("exact")));
    let walk = stdout(&["--csv", "entropy", "--n", "30", "--walk"]);
    assert_eq!(walk.lines().count(), 32);
    let ext = stdout(&["extensions", "--word", "a1", "--max-len", "6"]);
    assert!(ext.contains("# target mu([a1]) = 1/4"));
    let listed = stdout(&["extensions", "--word", "a1", "--max-len", "4", "--list"]);
    assert!(listed.contains("a2 b2 b1"));
}

#[test]
fn verify_exact_suite_reports_honestly() {
    let out = dyck(&["verify", "--suite", "exact"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(text.contains("TAP version 13\n1..6\n"));
    for id in [1, 2, 3, 10] {
        assert!(text.contains(&format!("\nok {id} - ")), "criterion {id}");
    }
    assert!(text.contains("\nnot ok 4 - "));
    assert!(text.contains("\nnot ok 5 - "));
}
