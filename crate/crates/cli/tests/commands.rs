use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn asmrel(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asmrel"))
        .args(args)
        .current_dir(dir)
        .env("ASMREL_CACHE_DIR", dir.join("cache"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(path: &Path) -> Value {
    serde_json::from_slice(&fs::read(path).unwrap()).unwrap()
}

#[test]
fn count_totals_and_top_row() {
    let tmp = TempDir::new().unwrap();
    let o = asmrel(tmp.path(), &["count", "--family", "A", "--n", "4"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "42\n"));
    let o = asmrel(tmp.path(), &["count", "--family", "A_nk", "--n", "3"]);
    assert_eq!(stdout(&o), "1,2\n2,3\n3,2\n");
    let o = asmrel(tmp.path(), &["count", "--family", "A", "--n", "1"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn count_single_entries_and_formats() {
    let tmp = TempDir::new().unwrap();
    let o = asmrel(
        tmp.path(),
        &["count", "--family", "A_nk", "--n", "5", "--index", "3"],
    );
    assert_eq!(stdout(&o), "135\n");
    let o = asmrel(
        tmp.path(),
        &["count", "--family", "A_nk", "--n", "3", "--format", "csv"],
    );
    assert_eq!(
        stdout(&o),
        "family,n,k,value\nA_nk,3,1,2\nA_nk,3,2,3\nA_nk,3,3,2\n"
    );
    let o = asmrel(
        tmp.path(),
        &["count", "--family", "A_nk", "--n", "2", "--format", "json"],
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "A_nk");
    assert_eq!(v["index_names"], serde_json::json!(["k"]));
    assert_eq!(
        v["entries"][0],
        serde_json::json!({"index": [1], "value": "1"})
    );
    // Extended coefficients are defined off the increasing tuples too.
    let o = asmrel(
        tmp.path(),
        &[
            "count",
            "--family",
            "coefficients",
            "--c",
            "0",
            "--d",
            "2",
            "--n",
            "3",
            "--index",
            "3,1",
        ],
    );
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "-2\n"));
}

#[test]
fn count_usage_errors() {
    let tmp = TempDir::new().unwrap();
    let o = asmrel(tmp.path(), &["count", "--family", "nope", "--n", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("A, A_nk, top-bottom"), "{}", stderr(&o));
    let o = asmrel(tmp.path(), &["count", "--family", "A", "--n", "8"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("practical bound 7"));
    let o = asmrel(
        tmp.path(),
        &["count", "--family", "A", "--n", "9", "--force"],
    );
    assert_eq!(code(&o), 2);
    let o = asmrel(
        tmp.path(),
        &["count", "--family", "A_nk", "--n", "3", "--index", "1,2"],
    );
    assert_eq!(code(&o), 2);
    let o = asmrel(
        tmp.path(),
        &["count", "--family", "coefficients", "--n", "3"],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn force_lifts_practical_bounds() {
    let tmp = TempDir::new().unwrap();
    let args = [
        "count",
        "--family",
        "coefficients",
        "--c",
        "2",
        "--d",
        "2",
        "--n",
        "4",
        "--index",
        "3,4,1,2",
    ];
    let o = asmrel(tmp.path(), &args);
    assert_eq!(code(&o), 2);
    let mut forced = args.to_vec();
    forced.push("--force");
    let o = asmrel(tmp.path(), &forced);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
    // Only the middle rows are counted; with c + d = n there are none, so
    // complementary position sets give exactly one.
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn verify_examples() {
    let tmp = TempDir::new().unwrap();
    let o = asmrel(
        tmp.path(),
        &["verify", "--identity", "main-theorem", "--n", "3"],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("holds  main-theorem n=3"));
    let rep = json(&tmp.path().join("asmrel-verify.json"));
    assert_eq!(rep["results"][0]["status"], "holds");

    let o = asmrel(
        tmp.path(),
        &[
            "verify",
            "--identity",
            "stroganov",
            "--n",
            "1",
            "--report",
            "s.json",
        ],
    );
    assert_eq!(code(&o), 0);
    let rep = json(&tmp.path().join("s.json"));
    assert_eq!(rep["results"][0]["status"], "holds");
    assert_eq!(rep["results"][0]["cases"], 0);

    let o = asmrel(
        tmp.path(),
        &["verify", "--all", "--n-max", "4", "--report", "all.json"],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let rep = json(&tmp.path().join("all.json"));
    assert_eq!(rep["summary"]["fails"], 0);
    assert!(rep["summary"]["checks"].as_u64().unwrap() >= 40);
}

#[test]
fn verify_usage_errors() {
    let tmp = TempDir::new().unwrap();
    for args in [
        &["verify", "--identity", "nope", "--n", "3"][..],
        &["verify", "--identity", "main-theorem", "--n", "2"],
        &["verify", "--identity", "main-theorem", "--n", "7"],
        &["verify", "--n", "3"],
        &["verify", "--all"],
        &["verify", "--all", "--n-max", "8"],
    ] {
        let o = asmrel(tmp.path(), args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn verify_csv_report() {
    let tmp = TempDir::new().unwrap();
    let o = asmrel(
        tmp.path(),
        &[
            "verify",
            "--identity",
            "antidiagonal",
            "--n-max",
            "3",
            "--format",
            "csv",
            "--report",
            "-",
        ],
    );
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("identity,params,range,cases,status,witness,lhs,rhs,notes")
    );
    assert!(lines.next().unwrap().starts_with("antidiagonal,n=2,"));
    assert!(lines.next().unwrap().starts_with("antidiagonal,n=3,"));
}

#[test]
fn conjecture_reports() {
    let tmp = TempDir::new().unwrap();
    for (n, d) in [("3", "1"), ("4", "2"), ("1", "1")] {
        let o = asmrel(
            tmp.path(),
            &["conjecture", "--n", n, "--d", d, "--report", "c.json"],
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let rep = json(&tmp.path().join("c.json"));
        let modes = rep["modes"].as_array().unwrap();
        assert_eq!(modes.len(), 2);
        for m in modes {
            assert_eq!(m["known_values_satisfy"], true);
            assert!(m["solution_space_dimension"].is_u64());
        }
    }
    let rep = json(&tmp.path().join("c.json"));
    assert_eq!(rep["modes"][0]["unknowns"], 1);
}

#[test]
fn cache_hits_on_second_run() {
    let tmp = TempDir::new().unwrap();
    let args = ["verify", "--all", "--n-max", "4"];
    let first = asmrel(tmp.path(), &args);
    assert_eq!(code(&first), 0);
    assert!(stderr(&first).contains(" 0 hits"), "{}", stderr(&first));
    let second = asmrel(tmp.path(), &args);
    assert_eq!(code(&second), 0);
    assert!(
        stderr(&second).contains(" 0 misses, 0 rejected"),
        "{}",
        stderr(&second)
    );
    assert_eq!(first.stdout, second.stdout);

    let o = asmrel(tmp.path(), &["cache", "list"]);
    assert!(stdout(&o).lines().count() > 10);
    assert!(stdout(&o).lines().all(|l| l.ends_with("\tok")));
}

/// Flips one digit inside a stored value, keeping the file valid JSON.
fn poison(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    let at = text.find("\"value\":\"").expect("entry has values") + "\"value\":\"".len();
    let mut bytes = text.into_bytes();
    bytes[at] = if bytes[at] == b'7' { b'8' } else { b'7' };
    fs::write(path, bytes).unwrap();
}

#[test]
fn poisoned_entries_are_recomputed() {
    let tmp = TempDir::new().unwrap();
    let args = ["count", "--family", "top-left", "--n", "4"];
    let clean = asmrel(tmp.path(), &args);
    let entry = tmp.path().join("cache").join("refined-top-left-n4.json");
    poison(&entry);
    let o = asmrel(tmp.path(), &["cache", "list"]);
    assert_eq!(stdout(&o), "refined-top-left-n4\tcorrupt\n");

    let again = asmrel(tmp.path(), &args);
    assert_eq!(code(&again), 0);
    assert!(stderr(&again).contains("failed validation"));
    assert!(stderr(&again).contains("1 rejected"));
    assert_eq!(clean.stdout, again.stdout);
    let o = asmrel(tmp.path(), &["cache", "list"]);
    assert_eq!(stdout(&o), "refined-top-left-n4\tok\n");
}

#[test]
fn no_cache_leaves_directory_untouched() {
    let tmp = TempDir::new().unwrap();
    let o = asmrel(
        tmp.path(),
        &["--no-cache", "count", "--family", "A", "--n", "5"],
    );
    assert_eq!(stdout(&o), "429\n");
    assert!(!tmp.path().join("cache").exists());

    asmrel(tmp.path(), &["count", "--family", "A", "--n", "5"]);
    let o = asmrel(tmp.path(), &["cache", "clear"]);
    assert_eq!(
        stdout(&o).lines().next().unwrap().split(' ').nth(1),
        Some("1")
    );
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let tmp = TempDir::new().unwrap();
    let a = asmrel(
        tmp.path(),
        &[
            "--no-cache",
            "-j",
            "1",
            "verify",
            "--all",
            "--n-max",
            "4",
            "--report",
            "-",
        ],
    );
    let b = asmrel(
        tmp.path(),
        &[
            "--no-cache",
            "-j",
            "4",
            "verify",
            "--all",
            "--n-max",
            "4",
            "--report",
            "-",
        ],
    );
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
