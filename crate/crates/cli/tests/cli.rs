//! End-to-end checks of the binary: exit codes, output contracts, and
//! worker-count determinism.

use std::process::{Command, Output};

fn rsdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsdl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn count_all_r_partitions_message_space() {
    let out = rsdl(&[
        "count", "--field", "q=5", "--k", "2", "--f", "x^3", "--all-r",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 25);
    // frozen oracle row: N(x^3, 3) = 2
    assert!(text.lines().any(|l| l.starts_with("5,2,1,") && l.ends_with(",3,2")));
}

#[test]
fn count_check_formula_exact_case() {
    let out = rsdl(&[
        "count",
        "--field",
        "q=5",
        "--k",
        "2",
        "--f",
        "x^2",
        "--r",
        "2",
        "--check-formula",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).expect("one data row");
    // index from the end; the polynomial cell is quoted and holds commas
    let cells: Vec<&str> = row.rsplit(',').collect();
    assert_eq!(cells[0], "0"); // gap
    assert_eq!(cells[1], "true"); // holds
    assert_eq!(cells[2], "~0"); // zero bound in the exact case
    assert_eq!(cells[3], "10"); // main term
    assert_eq!(cells[4], "10"); // oracle C(5,2)
}

#[test]
fn exit_codes_stable() {
    // parse error -> 2
    let out = rsdl(&["count", "--field", "q=6", "--k", "1", "--f", "x", "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rsdl(&["count", "--field", "q=5", "--k", "1", "--f", "y+1", "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // budget exceeded -> 3
    let out = rsdl(&[
        "count", "--field", "q=9", "--k", "7", "--f", "x^7", "--all-r", "--budget", "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // verification failure -> nonzero (clap usage errors also give 2)
    let out = rsdl(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_budget_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_rsdl"))
        .env("RSDL_BUDGET", "100")
        .args(["count", "--field", "q=9", "--k", "7", "--f", "x^7", "--all-r"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    // explicit flag overrides the environment
    let out = Command::new(env!("CARGO_BIN_EXE_rsdl"))
        .env("RSDL_BUDGET", "100")
        .args([
            "count", "--field", "q=5", "--k", "2", "--f", "x^2", "--r", "0", "--budget", "100000",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn census_emits_entry_array() {
    let out = rsdl(&["census", "--field", "q=3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let entries: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = entries.as_array().expect("top-level array");
    assert_eq!(arr.len(), 6);
    for e in arr {
        assert!(e.get("word").is_some());
        assert_eq!(e["degree"], 1);
        assert_eq!(e["distance"], 2);
        assert!(e.get("class").is_some());
    }
}

#[test]
fn distribution_matches_fixture() {
    let out = rsdl(&[
        "distribution",
        "--field",
        "q=5",
        "--k",
        "2",
        "--poly",
        "x^4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"], serde_json::json!([0, 1, 0, 4, 13, 7]));
    assert_eq!(v["error_distance"], 1);
    assert_eq!(v["class"], "Ordinary");
}

#[test]
fn outputs_byte_identical_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = vec![];
    for workers in ["1", "2"] {
        let path = dir.path().join(format!("sweep_{workers}.csv"));
        let out = Command::new(env!("CARGO_BIN_EXE_rsdl"))
            .args([
                "bounds", "sweep", "--q", "5,7", "--count", "25", "--seed", "11", "--workers",
                workers, "--out",
            ])
            .arg(&path)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0));
        bytes.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);

    // same for a census (parallel word scan)
    let mut census_bytes = vec![];
    for workers in ["1", "2"] {
        let path = dir.path().join(format!("census_{workers}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_rsdl"))
            .args([
                "census", "--field", "q=5", "--k", "2", "--workers", workers, "--out",
            ])
            .arg(&path)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0));
        census_bytes.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(census_bytes[0], census_bytes[1]);
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = rsdl(&[
        "verify", "sieve", "--k", "4", "--trials", "8", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["suite"], "sieve");
}

#[test]
fn regime_rejects_out_of_range() {
    let out = rsdl(&[
        "regime", "--c", "0.3", "--delta", "0.3", "--lambda", "0.1", "--primes", "101",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = rsdl(&[
        "regime", "--c", "0.3", "--delta", "0.2", "--lambda", "0.1", "--primes", "101",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("101,30,2,31,"));
}

#[test]
fn weil_sweep_all_pass() {
    let out = rsdl(&["weil", "sweep", "--field", "q=5", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() > 24); // 24 nontrivial characters
    assert!(text.lines().skip(1).all(|l| l.contains("true")));
}

#[test]
fn fixtures_roundtrip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures.json");
    let out = Command::new(env!("CARGO_BIN_EXE_rsdl"))
        .args(["fixtures", "generate", "--out"])
        .arg(&path)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<rsdl_core::fixtures::FixtureRecord> =
        serde_json::from_str(&text).unwrap();
    let mismatches = rsdl_core::fixtures::check(&records, 10_000_000).unwrap();
    assert!(mismatches.is_empty(), "{mismatches:?}");
}
