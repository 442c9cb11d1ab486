use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn e2pm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e2pm")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--report", "json"];
    full.extend_from_slice(args);
    let out = e2pm(&full);
    (code(&out), serde_json::from_slice(&out.stdout).expect("json report"))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_corpus_passes() {
    let out = e2pm(&["verify-corpus", "--include-derived"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("status: 13/13 pass (exit 0)"));
    let (c, v) = json(&["verify-corpus"]);
    assert_eq!(c, 0);
    assert_eq!(v["items"].as_array().unwrap().len(), 12);
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn verify_corpus_flags_a_flipped_cell() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(data("corpus/witness5.json")).unwrap();
    std::fs::write(dir.path().join("a_good.json"), &good).unwrap();
    let flipped = good.replacen("[0, 2, 2, 3, 4]", "[0, 2, 2, 4, 3]", 1);
    assert_ne!(flipped, good, "fixture row not found");
    std::fs::write(dir.path().join("b_flipped.json"), flipped).unwrap();
    let (c, v) = json(&["verify-corpus", "--dir", path(dir.path())]);
    assert_eq!(c, 1);
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 2);
    assert_eq!(items[0]["ok"], true);
    assert_eq!(items[1]["ok"], false);
}

#[test]
fn check_reports_capabilities_in_both_formats() {
    let file = data("corpus/witness5.tbl");
    let out = e2pm(&["check", path(&file)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("capabilities: R✓ D✓ H✓"));
    let (c, v) = json(&["check", path(&file)]);
    assert_eq!(c, 0);
    let facts = &v["items"][0]["facts"];
    assert_eq!(facts["capabilities"], "R✓ D✓ H✓");
    assert_eq!(facts["icp_triples"], serde_json::json!([[3, 2, 4], [4, 2, 3]]));
    for (k, val) in facts.as_object().unwrap() {
        assert!(text.contains(&format!("  {k}:")), "text lacks {k} = {val}");
    }
}

#[test]
fn check_and_decompose_reject_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tbl");
    std::fs::write(&bad, "3 0 1\n0 0 0\n1 1 x\n2 2 2\n").unwrap();
    let out = e2pm(&["check", path(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("parse error:"));
    let dup = dir.path().join("dup.tbl");
    std::fs::write(&dup, "4 0 1\n0 0 0 0\n1 1 1 1\n0 0 2 3\n0 0 2 3\n").unwrap();
    assert_eq!(code(&e2pm(&["check", path(&dup)])), 1);
    assert_eq!(code(&e2pm(&["check", "/nonexistent/table.tbl"])), 2);
    assert_eq!(code(&e2pm(&["bounds", "--require", "Nope", "--max", "4"])), 2);
    assert_eq!(code(&e2pm(&["frobnicate"])), 2);
}

#[test]
fn decompose_prints_the_partition() {
    let (c, v) = json(&["decompose", path(&data("corpus/witness5.tbl"))]);
    assert_eq!(c, 0);
    let facts = &v["items"][0]["facts"];
    assert_eq!(facts["Z"], serde_json::json!([0, 1]));
    assert_eq!(facts["C"], serde_json::json!([3, 4]));
    assert_eq!(facts["N"], serde_json::json!([2]));
}

#[test]
fn search_outcomes_map_to_exit_codes() {
    assert_eq!(code(&e2pm(&["search", path(&data("specs/rdh5.spec"))])), 0);
    assert_eq!(code(&e2pm(&["search", path(&data("specs/h4.spec"))])), 1);
    let out = e2pm(&["--budget", "10", "search", path(&data("specs/rdh5.spec"))]);
    assert_eq!(code(&out), 3);
}

#[test]
fn bounds_certifies_smaller_sizes() {
    let out = e2pm(&["bounds", "--require", "E2PM,H", "--forbid", "D", "--min", "3", "--max", "5"]);
    assert_eq!(code(&out), 0);
    let (_, v) = json(&["bounds", "--require", "E2PM,H", "--forbid", "D", "--min", "3", "--max", "5"]);
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 3);
    assert!(stdout(&out).contains("5"));
}

#[test]
fn iso_between_tables_and_invariance() {
    let w5 = data("corpus/witness5.tbl");
    let k5 = data("corpus/kripke5.tbl");
    assert_eq!(code(&e2pm(&["iso", path(&w5), path(&w5)])), 0);
    assert_eq!(code(&e2pm(&["iso", path(&w5), path(&k5)])), 1);
    assert_eq!(code(&e2pm(&["iso", path(&w5)])), 0);
    let (c, v) = json(&["--seed", "7", "iso", path(&data("corpus/witness10.tbl")), "--samples", "20"]);
    assert_eq!(c, 0);
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn encode_writes_dimacs_and_decodes_models() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("rdh5.cnf");
    let spec = data("specs/rdh5.spec");
    assert_eq!(code(&e2pm(&["encode", path(&spec), "-o", path(&cnf)])), 0);
    let text = std::fs::read_to_string(&cnf).unwrap();
    let (vars, clauses) = e2pm::cnf::parse_dimacs(&text).unwrap();
    assert!(vars > 125 && !clauses.is_empty());

    let witness = e2pm::corpus::load_table("5 0 1\n0 0 0 0 0\n1 1 1 1 1\n0 0 0 0 1\n0 0 0 1 0\n0 0 2 4 3\n")
        .unwrap()
        .table;
    let doc = e2pm::cnf::encode(&e2pm::search::SearchSpec::from_lists(
        5,
        &["E2PM".parse().unwrap(), "R_mutual".parse().unwrap(), "D".parse().unwrap(), "H".parse().unwrap()],
        &[],
    ))
    .unwrap();
    let model = doc.model_for_table(&witness);
    let body: Vec<String> = model.iter().map(|l| l.to_string()).collect();
    let good = dir.path().join("good.model");
    std::fs::write(&good, format!("s SATISFIABLE\nv {} 0\n", body.join(" "))).unwrap();
    assert_eq!(code(&e2pm(&["encode", path(&spec), "--model", path(&good)])), 0);

    let bad = dir.path().join("bad.model");
    let broken: Vec<String> = model.iter().map(|&l| if l == e2pm::cnf::cell_var(5, 2, 0, 0) { -l } else { l }).map(|l| l.to_string()).collect();
    std::fs::write(&bad, format!("v {} 0\n", broken.join(" "))).unwrap();
    assert_ne!(code(&e2pm(&["encode", path(&spec), "--model", path(&bad)])), 0);
}

#[test]
fn export_corpus_matches_checked_in_data() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&e2pm(&["export-corpus", "--out", path(dir.path())])), 0);
    for name in e2pm::corpus::CORPUS_NAMES {
        for ext in ["tbl", "json"] {
            let f = format!("{name}.{ext}");
            let written = std::fs::read_to_string(dir.path().join(&f)).unwrap();
            assert_eq!(written, std::fs::read_to_string(data(&format!("corpus/{f}"))).unwrap(), "{f}");
        }
    }
}

#[test]
fn timing_is_opt_in() {
    let (_, v) = json(&["check", path(&data("corpus/kripke4.tbl"))]);
    assert!(v.get("timing_ms").is_none());
    let (_, v) = json(&["--timing", "check", path(&data("corpus/kripke4.tbl"))]);
    assert!(v["timing_ms"].is_u64());
}
