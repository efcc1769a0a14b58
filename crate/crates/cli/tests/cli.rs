use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multidecomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SEARCH: [&str; 10] = [
    "search",
    "--k",
    "4",
    "--m",
    "2",
    "--min",
    "1",
    "--max",
    "20",
    "--distinct",
];

#[test]
fn db_deduplicates_repeat_runs() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("cat.jsonl");
    let db = db.to_str().unwrap();
    let mut args = SEARCH.to_vec();
    args.extend(["--db", db]);

    let first = run(&args);
    assert!(first.status.success());
    let emitted = stdout(&first).lines().count();
    assert!(emitted > 0);
    assert_eq!(fs::read_to_string(db).unwrap().lines().count(), emitted);

    let second = run(&args);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    assert!(String::from_utf8_lossy(&second.stderr).contains("0 new record"));
    assert_eq!(fs::read_to_string(db).unwrap().lines().count(), emitted);

    for line in fs::read_to_string(db).unwrap().lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["key"], v["instance"]["key"]);
        assert!(v["created_at"].as_str().unwrap().ends_with('Z'));
        assert_eq!(v["generator"], "search");
    }
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("a.jsonl");
    let copy = dir.path().join("b.jsonl");
    let exported = dir.path().join("export.jsonl");
    let (db, copy, exported) = (
        db.to_str().unwrap(),
        copy.to_str().unwrap(),
        exported.to_str().unwrap(),
    );
    let mut args = SEARCH.to_vec();
    args.extend(["--db", db]);
    assert!(run(&args).status.success());

    assert!(run(&["catalog", "export", "--db", db, "--out", exported])
        .status
        .success());
    assert_eq!(
        fs::read_to_string(db).unwrap(),
        fs::read_to_string(exported).unwrap()
    );

    let import = run(&["catalog", "import", "--db", copy, exported]);
    assert!(import.status.success());
    let again = run(&["catalog", "import", "--db", copy, exported]);
    assert_eq!(stdout(&again).trim(), "0 new record(s)");
    assert_eq!(
        fs::read_to_string(copy).unwrap(),
        fs::read_to_string(db).unwrap()
    );

    let listed = run(&["catalog", "list", "--db", db]);
    assert_eq!(
        stdout(&listed).lines().count(),
        fs::read_to_string(db).unwrap().lines().count()
    );
}

#[test]
fn malformed_catalog_is_rejected_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("bad.jsonl");
    fs::write(&db, "{\"key\":1}\n").unwrap();
    let out = run(&["catalog", "list", "--db", db.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn corrupted_check_exits_one() {
    let out = run(&["verify-paper", "--corrupt", "vandermonde"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[FAIL] vandermonde"));
    assert_eq!(text.matches("[PASS]").count(), 7);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["search", "--k", "4"][..],
        &["search", "--k", "4", "--m", "2", "--min", "5", "--max", "1"],
        &[
            "search", "--k", "4", "--m", "2", "--min", "1", "--max", "5", "--filter", "bogus",
        ],
        &["periods", "--p", "12", "--e", "5"],
        &["periods", "--p", "211", "--e", "5"],
        &["resolvent", "--p", "11", "--e", "5", "--t", "5"],
        &["discriminant", "0"],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(
        run(&["periods", "--p", "211", "--e", "5", "--max-p", "300"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn periods_json() {
    let out = run(&["periods", "--p", "11", "--e", "5", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["polynomial"], serde_json::json!([1, 3, -3, -4, 1, 1]));
    assert_eq!(v["discriminant"], 14641);
    let total: f64 = v["periods"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["value"].as_f64().unwrap())
        .sum();
    assert!((total + 1.0).abs() < 1e-9);
}

#[test]
fn two_squares_and_discriminant() {
    assert_eq!(
        stdout(&run(&["two-squares", "50"])).trim(),
        "50 = 1^2 + 7^2"
    );
    let v: Value = serde_json::from_str(&stdout(&run(&["two-squares", "1318", "--json"]))).unwrap();
    assert_eq!(v["kind"], "not-representable");
    assert_eq!(v["offending_prime"], 659);
    let d = run(&["discriminant", "1", "0", "-1", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&d)).unwrap();
    assert_eq!(v["discriminant"], 4);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hits.txt");
    let mut args = SEARCH.to_vec();
    args.extend(["--format", "table"]);
    let direct = stdout(&run(&args));
    args.extend(["--out", path.to_str().unwrap()]);
    let out = run(&args);
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), direct);
    assert!(direct.starts_with("tuple"));
}
