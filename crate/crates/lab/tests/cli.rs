use std::process::{Command, Output};

use congruence_core::sequences::SeqCache;
use congruence_lab::cache;
use congruence_lab::config::{Command as Cmd, Format, RunConfig};
use congruence_lab::report::natural_key;
use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congruence-lab"))
        .args(args)
        .env_remove(cache::CACHE_ENV)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn without_timing(jsonl: &str) -> Vec<Value> {
    jsonl
        .lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("us");
            v
        })
        .collect()
}

#[test]
fn theorem_sweep_exits_zero() {
    let out = lab(&[
        "verify", "--kind", "theorem", "--primes", "3..50", "--format", "jsonl",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let recs = without_timing(&stdout(&out));
    assert!(recs.len() > 1000);
    assert!(recs.iter().all(|r| r["pass"] == true || r["skip"] == true));
}

#[test]
fn inverted_range_is_a_usage_error() {
    let out = lab(&["verify", "--primes", "50..3"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("50..3"));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["verify", "--kind", "axiom"][..],
        &["verify", "--x", "1/0"],
        &["verify", "--id", "no-such-thing"],
        &["verify", "--modulus", "thm1.2/eq1.11"],
        &["verify", "--jobs", "0"],
        &["verify", "--format", "xml"],
        &["identity"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&lab(args)), 2, "{args:?}");
    }
    assert_eq!(code(&lab(&["--help"])), 0);
}

#[test]
fn conjecture_failures_never_set_exit_one() {
    let out = lab(&[
        "verify", "--id", "conj6.11", "--primes", "5..60", "--format", "jsonl",
    ]);
    assert_eq!(code(&out), 0);
    let recs = without_timing(&stdout(&out));
    assert!(!recs.is_empty());
    assert!(recs
        .iter()
        .all(|r| r["pass"].is_boolean() && r["stmt"].as_str().unwrap().starts_with("conj6.11/")));
    // a corrupted conjecture is a finding
    let out = lab(&[
        "verify",
        "--id",
        "conj6.11",
        "--primes",
        "5..13",
        "--inject-fault",
        "conj6.11/a",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("<- finding"));
}

#[test]
fn corrupted_theorem_exits_one() {
    let out = lab(&[
        "verify",
        "--id",
        "thm1.2/*",
        "--primes",
        "3..20",
        "--inject-fault",
        "thm1.2/eq1.12",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn record_schema() {
    let out = lab(&[
        "verify",
        "--id",
        "thm1.2/eq1.11",
        "--primes",
        "5",
        "--x",
        "1",
        "--format",
        "jsonl",
    ]);
    assert_eq!(code(&out), 0);
    let line = stdout(&out);
    let v: Value = serde_json::from_str(line.trim()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(
        keys,
        ["stmt", "kind", "p", "e", "x", "extra", "lhs", "rhs", "pass", "skip", "us"]
    );
    assert_eq!((v["p"].as_u64(), v["e"].as_u64()), (Some(5), Some(2)));
    assert_eq!((v["lhs"].as_u64(), v["rhs"].as_u64()), (Some(24), Some(24)));
    assert_eq!(v["x"], "1/1");
}

#[test]
fn csv_has_a_header_and_one_row_per_record() {
    let out = lab(&[
        "verify",
        "--id",
        "wolstenholme",
        "--primes",
        "5..30",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().get(0), Some("stmt"));
    // H and H2 at 5, 7, 11, 13, 17, 19, 23, 29
    assert_eq!(rdr.records().count(), 16);
}

#[test]
fn output_is_deterministic_across_widths() {
    let base = [
        "verify",
        "--kind",
        "theorem,lemma,conjecture",
        "--primes",
        "3..40",
        "--format",
        "jsonl",
    ];
    let one = lab(&[&base[..], &["--jobs", "1"]].concat());
    let many = lab(&[&base[..], &["--jobs", "8"]].concat());
    let again = lab(&[&base[..], &["--jobs", "8"]].concat());
    assert_eq!(code(&one), 0);
    let a = without_timing(&stdout(&one));
    assert_eq!(a, without_timing(&stdout(&many)));
    assert_eq!(a, without_timing(&stdout(&again)));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = lab(&[
        "verify",
        "--id",
        "sec4/27",
        "--primes",
        "3..20",
        "--format",
        "jsonl",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    // 6 primes, 6 test sequences
    assert_eq!(std::fs::read_to_string(path).unwrap().lines().count(), 36);
}

#[test]
fn list_groups_conjectures() {
    let out = lab(&["list", "--kind", "conjecture"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let groups: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(groups.len(), 14, "{groups:?}");
    for n in 1..=14 {
        assert!(
            groups
                .iter()
                .any(|g| g.starts_with(&format!("[conj6.{n}]"))),
            "6.{n}"
        );
    }
}

#[test]
fn list_by_pattern_and_jsonl() {
    let out = lab(&["list", "--id", "thm1.2/*"]);
    let text = stdout(&out);
    for id in ["thm1.2/eq1.11", "thm1.2/eq1.12", "thm1.2/eq1.13"] {
        assert!(text.contains(id));
    }
    let out = lab(&["list", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(rows.len() > 92);
    for r in &rows {
        for key in [
            "id",
            "paper_ref",
            "quote",
            "prime_constraint",
            "e",
            "param_domain",
            "kind",
        ] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
    }
}

#[test]
fn export_is_one_document() {
    let out = lab(&["export"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let stmts = doc["statements"].as_array().unwrap();
    assert!(stmts
        .iter()
        .any(|s| s["id"] == "thm1.4/eq1.21" && s["e"] == 3));
}

#[test]
fn identity_commands() {
    let out = lab(&["identity", "--id", "eq1.17", "--param-max", "0"]);
    assert_eq!(code(&out), 0);
    let out = lab(&["identity", "--id", "eq4.6", "--param-max", "8"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("recurrence verified"));
    let out = lab(&["identity", "--id", "conj6.4c", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().all(|l| l.contains("\"pass\":true")));
}

#[test]
fn cache_round_trip_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_congruence-lab"))
            .args([
                "verify",
                "--id",
                "conj6.11/a",
                "--primes",
                "3..40",
                "--format",
                "jsonl",
            ])
            .env(cache::CACHE_ENV, dir.path())
            .output()
            .unwrap()
    };
    let cold = run();
    assert_eq!(code(&cold), 0);
    let file = cache::cache_path(dir.path());
    assert!(file.exists());
    let warm = run();
    assert_eq!(
        without_timing(&stdout(&cold)),
        without_timing(&stdout(&warm))
    );

    let mut c = SeqCache::new();
    c.euler(30);
    c.bernoulli(25);
    let back = cache::decode(&cache::encode(&c).unwrap()).unwrap();
    assert_eq!(back.snapshot(), c.snapshot());
    // truncated or foreign files are ignored
    let mut bytes = cache::encode(&c).unwrap();
    let pos = bytes.len() - 1;
    bytes.truncate(pos);
    assert!(cache::decode(&bytes).is_none());
    assert!(cache::decode(b"not a cache").is_none());
}

#[test]
fn config_round_trips() {
    let mut cfg = RunConfig::new(Cmd::Verify);
    cfg.kinds = vec![String::from("theorem")];
    cfg.ids = vec![String::from("thm1.2/*")];
    cfg.primes = (5, 97);
    cfg.x = Some(vec![String::from("-1/2"), String::from("3")]);
    cfg.modulus = vec![(String::from("conj6.11/a"), 3)];
    cfg.jobs = Some(2);
    cfg.format = Format::Csv;
    let text = serde_json::to_string(&cfg).unwrap();
    let back: RunConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cfg);
    assert!(back.validate().is_ok());
    cfg.primes = (97, 5);
    assert!(cfg.validate().is_err());
}

#[test]
fn natural_order() {
    let mut ids = [
        "conj6.10",
        "conj6.2",
        "conj6.14iii/a",
        "conj6.1i",
        "conj6.14i",
    ];
    ids.sort_by_key(|s| natural_key(s));
    assert_eq!(
        ids,
        [
            "conj6.1i",
            "conj6.2",
            "conj6.10",
            "conj6.14i",
            "conj6.14iii/a"
        ]
    );
}
