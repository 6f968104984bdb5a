use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use recollement::report::{cutoff_inconsistencies, from_json, to_canonical_json};

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recollement")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn analyze_fix_b_summary() {
    let o = run(&["analyze", "fix_b", "--idempotent", "a"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("k[x]/x^2"), "{text}");
    assert!(text.contains("bound 3"), "{text}");
    assert!(text.contains("Ext cycle"), "{text}");
}

#[test]
fn analyze_fix_a_is_blocked_by_beta() {
    let o = run(&["analyze", "fix_a", "--idempotent", "a", "--no-hh"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains(">=30"), "{text}");
    assert!(text.contains("unknown"), "{text}");
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("{i}.json"))).collect();
    for p in &paths {
        let o = run(&["analyze", "fix_b", "--idempotent", "a", "--json", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let (a, b) = (fs::read_to_string(&paths[0]).unwrap(), fs::read_to_string(&paths[1]).unwrap());
    assert_eq!(a, b);
    let report = from_json(&a).unwrap();
    assert_eq!(to_canonical_json(&report).unwrap(), a);
}

#[test]
fn lower_cutoff_stays_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let low = dir.path().join("low.json");
    let o = run(&["analyze", "fix_a", "--idempotent", "a", "--cutoff", "5", "--json", low.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let reference = from_json(&fs::read_to_string(Path::new(GOLDEN).join("fix_a.a.json")).unwrap()).unwrap();
    let other = from_json(&fs::read_to_string(&low).unwrap()).unwrap();
    assert_eq!(other.meta.cutoff, 5);
    assert!(cutoff_inconsistencies(&reference, &other).is_empty());
}

#[test]
fn resolve_prints_stages() {
    let o = run(&["resolve", "fix_a", "--module", "simple:2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pd = 2"), "{}", stdout(&o));
    let o = run(&["resolve", "fix_c", "--module", "simple:v"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("period"), "{}", stdout(&o));
}

#[test]
fn hochschild_depends_on_characteristic() {
    let o = run(&["hochschild", "fix_c", "--field", "101", "--field", "2", "--max-degree", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let (odd, two) = text.split_once("over F_2").unwrap();
    let column = |s: &str| -> Vec<usize> {
        s.lines().filter_map(|l| l.split_whitespace().nth(1)?.parse().ok()).collect()
    };
    assert_eq!(column(odd), vec![2, 1, 1, 1]);
    assert_eq!(column(two), vec![2, 2, 2, 2]);
}

#[test]
fn corpus_passes() {
    let o = run(&["corpus", "--run-all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn corpus_reports_a_corrupted_golden() {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(GOLDEN).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let target = dir.path().join("fix_b.a.json");
    let text = fs::read_to_string(&target).unwrap().replacen("\"value\": 3", "\"value\": 4", 1);
    fs::write(&target, text).unwrap();
    let o = run(&["corpus", "--golden", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("fix_b.a") && out.contains("FAIL"), "{out}");
    assert!(out.lines().any(|l| l.trim_start().starts_with('-')), "{out}");
}

#[test]
fn corpus_under_a_lower_cutoff() {
    let o = run(&["corpus", "--cutoff", "5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qalg");
    fs::write(&bad, "field 101\nvertices v\n").unwrap();
    assert_eq!(code(&run(&["analyze", bad.to_str().unwrap(), "--idempotent", "a"])), 2);

    let cyclic = dir.path().join("loop.qalg");
    fs::write(&cyclic, "field 101\nvertex v\narrow x v v\nidempotent a = v\n").unwrap();
    assert_eq!(code(&run(&["analyze", cyclic.to_str().unwrap(), "--idempotent", "a"])), 3);

    assert_eq!(code(&run(&["hochschild", "fix_b", "--dim-cap", "4"])), 4);
}
