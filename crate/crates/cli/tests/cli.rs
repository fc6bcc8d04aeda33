use std::io::Write;
use std::process::{Command, Output, Stdio};

use alternabase::{parse_base, DigitWord, QuadNum};
use serde_json::Value;
use tempfile::NamedTempFile;

const RUNNING: &str = r#"{"betas": ["1/2 + 1/2 * sqrt(13)", "5/6 + 1/6 * sqrt(13)"], "period_note": "running example"}"#;
const UNBALANCED: &str = r#"["16/15 + 4/15 * sqrt(61)", "11/4 + 1/4 * sqrt(61)"]"#;

/// `(decimal, expansion, w, v)` for the first 36 integers of the running base.
const TABLE: [(&str, &str, usize, usize); 36] = [
    ("0.00", "ε", 0, 0),
    ("1.00", "1", 1, 1),
    ("1.43", "10", 0, 0),
    ("2.43", "11", 1, 1),
    ("2.86", "20", 2, 2),
    ("3.30", "100", 0, 0),
    ("4.30", "101", 3, 3),
    ("4.73", "1000", 0, 0),
    ("5.73", "1001", 1, 1),
    ("6.17", "1010", 0, 0),
    ("7.17", "1011", 1, 1),
    ("7.60", "1020", 2, 2),
    ("8.03", "1100", 0, 0),
    ("9.03", "1101", 3, 3),
    ("9.47", "2000", 0, 0),
    ("10.47", "2001", 4, 2),
    ("10.90", "10000", 0, 0),
    ("11.90", "10001", 1, 1),
    ("12.34", "10010", 0, 0),
    ("13.34", "10011", 1, 1),
    ("13.77", "10020", 2, 2),
    ("14.21", "10100", 0, 0),
    ("15.21", "10101", 5, 3),
    ("15.64", "100000", 0, 0),
    ("16.64", "100001", 1, 1),
    ("17.07", "100010", 0, 0),
    ("18.07", "100011", 1, 1),
    ("18.51", "100020", 2, 2),
    ("18.94", "100100", 0, 0),
    ("19.94", "100101", 3, 3),
    ("20.38", "101000", 0, 0),
    ("21.38", "101001", 1, 1),
    ("21.81", "101010", 0, 0),
    ("22.81", "101011", 1, 1),
    ("23.25", "101020", 2, 2),
    ("23.68", "101100", 0, 0),
];

fn base_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alternabase")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn integers_table_is_reproduced_byte_for_byte() {
    let f = base_file(RUNNING);
    let path = f.path().to_str().unwrap();
    let args = ["integers", "--base", path, "--count", "36", "--format", "tsv"];
    let first = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, run(&args).stdout, "output is not deterministic");
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k\tvalue\tdecimal\texpansion\tw\tv"));
    for (k, (line, row)) in lines.zip(TABLE).enumerate() {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols[0], k.to_string());
        assert_eq!((cols[2], cols[3]), (row.0, row.1), "row {k}");
        assert_eq!((cols[4], cols[5]), (row.2.to_string().as_str(), row.3.to_string().as_str()), "row {k}");
    }
    assert_eq!(text.lines().count(), 37);
}

#[test]
fn quasi_greedy_of_the_shifted_base() {
    let f = base_file(RUNNING);
    let path = f.path().to_str().unwrap();
    assert_eq!(stdout(&run(&["qg", "--base", path, "--shift", "1"])), "(1,0)^w\n");
    assert_eq!(stdout(&run(&["qg", "--base", path])), "2,0 (0,1)^w\n");
    assert_eq!(stdout(&run(&["qg", "--base", path, "--shift", "-1"])), "(1,0)^w\n");
}

#[test]
fn json_outputs_parse_back() {
    let f = base_file(RUNNING);
    let path = f.path().to_str().unwrap();
    let base = parse_base(RUNNING).unwrap();

    let out = run(&["integers", "--base", path, "--count", "50", "--format", "json"]);
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 50);
    for row in &rows {
        let value: QuadNum = serde_json::from_value(row["value"]["exact"].clone()).unwrap();
        let text: QuadNum = row["value"]["text"].as_str().unwrap().parse().unwrap();
        let word: DigitWord = row["expansion"].as_str().unwrap().parse().unwrap();
        assert_eq!(value, text);
        assert_eq!(base.value(&word), value);
    }

    let out = run(&["parry", "--base", path, "--format", "json"]);
    let parry: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again = parse_base(&parry["betas"].to_string()).unwrap();
    assert_eq!(again, base);
    assert_eq!(parry["classes"], serde_json::json!([0, 1, 1, 1]));

    let out = run(&["expand", "--base", path, "--format", "json", "7/3"]);
    let e: Value = serde_json::from_slice(&out.stdout).unwrap();
    let word: DigitWord = e["expansion"].as_str().unwrap().parse().unwrap();
    assert_eq!(base.value(&word), QuadNum::ratio(7, 3));

    let out = run(&["sturmian", "--base", path, "--format", "json", "--prefix", "300"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classes"], serde_json::json!([0, 1, 1, 1]));
    assert!(v["balance"]["violation"].is_null());
}

#[test]
fn substitution_and_matrix_views() {
    let f = base_file(RUNNING);
    let path = f.path().to_str().unwrap();
    let subst = stdout(&run(&["subst", "--base", path]));
    assert!(subst.contains("phi[0]\t0->01, 1->2, 2->03, 3->02\n"));
    assert!(subst.contains("phi[1]\t0->001, 1->2, 2->3, 3->2\n"));
    assert!(subst.contains("composed\t0->01012, 1->03, 2->02, 3->03\n"));
    let m = stdout(&run(&["matrix", "--base", path]));
    assert_eq!(m, "2\t2\t1\t0\n1\t0\t0\t1\n1\t0\t1\t0\n1\t0\t0\t1\n");
    let text = stdout(&run(&["matrix", "--base", path, "--format", "text"]));
    assert!(text.contains("char poly\tX^4 - 4X^3 + 2X^2 + X\n"));
    let dot = stdout(&run(&["automaton", "--base", path]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 13);
}

#[test]
fn verify_reports_every_check() {
    let f = base_file(RUNNING);
    let out = run(&["verify", "--base", f.path().to_str().unwrap(), "--prefix", "500"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("sturmian\tyes"));

    let g = base_file(UNBALANCED);
    let out = run(&["verify", "--base", g.path().to_str().unwrap(), "--prefix", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("balance\tnot balanced"));
    assert!(text.contains("sturmian\tno"));

    let out = run(&["verify", "--base", "[3]", "--prefix", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let gaps = stdout(&run(&["gaps", "--base", "[3]", "--count", "10"]));
    assert!(gaps.contains("\nv\t0000000000\n"));
}

#[test]
fn base_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_alternabase"))
        .args(["qg", "--base", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(RUNNING.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "2,0 (0,1)^w\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["qg"]).status.code(), Some(1));
    assert_eq!(run(&["qg", "--base", "/nonexistent/base.json"]).status.code(), Some(1));
    assert_eq!(run(&["qg", "--base", "[1]"]).status.code(), Some(1));
    assert_eq!(run(&["parry", "--base", "[\"1 + sqrt(5)\"]", "--budget", "10"]).status.code(), Some(1));
    assert_eq!(run(&["qg", "--base", "[2]", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(run(&["qg", "--base", "[2]", "--budget", "0"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "--base", "[2]", "-- -1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let out = run(&["qg", "--base", "[2]"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "(1)^w\n".to_string()));
}
