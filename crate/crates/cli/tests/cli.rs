//! End-to-end checks of the binary: exit codes, output formats, cache
//! transparency, stdin piping, and script export shapes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbitforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(run(&["closure", "--n", "3", "--lambda", "[2,1]"]).status.code(), Some(0));
    // domain errors: malformed partition, sum mismatch, symplectic refusal
    let bad = run(&["closure", "--n", "3", "--lambda", "[1,2]"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("non-increasing"));
    let sum = run(&["closure", "--n", "4", "--lambda", "[2,1]"]);
    assert_eq!(sum.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&sum.stderr).contains("sums to 3"));
    let gate = run(&["closure", "--m", "2", "--lambda", "[3,1]"]);
    assert_eq!(gate.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&gate.stderr).contains("no symplectic orbit"));
    // usage errors: unknown flag, missing size, both sizes, wrong pairing
    assert_eq!(run(&["closure", "--n", "3", "--lambda", "[2,1]", "--nope"]).status.code(), Some(2));
    assert_eq!(run(&["closure", "--lambda", "[2,1]"]).status.code(), Some(2));
    assert_eq!(run(&["closure", "--n", "3", "--m", "2", "--lambda", "[2,1]"]).status.code(), Some(2));
    assert_eq!(
        run(&["closure", "--algebra", "sp", "--n", "4", "--lambda", "[2,2]"]).status.code(),
        Some(2)
    );
}

#[test]
fn closure_json_envelope_carries_the_contract_fields() {
    let value = stdout_json(&run(&["closure", "--n", "3", "--lambda", "[2,1]"]));
    assert_eq!(value["schema"], "orbitforge-v1");
    assert_eq!(value["monomial_order"], "grlex-rowmajor-v1");
    assert_eq!(value["equation_count"], 18);
    assert_eq!(value["algebra"], "gl");
    assert_eq!(value["lambda"], serde_json::json!([2, 1]));
    let equations = value["equation_set"]["equations"].as_array().unwrap();
    assert_eq!(equations.len(), 18);
    assert!(equations.iter().all(|eq| !eq["provenance"].as_array().unwrap().is_empty()));
    // gl output carries no symplectic fields
    assert!(value.get("sp_mode").is_none());
    assert!(value.get("gerstenhaber").is_none());
}

#[test]
fn sp_envelope_adds_mode_and_gate() {
    let value = stdout_json(&run(&["closure", "--m", "1", "--lambda", "[2]"]));
    assert_eq!(value["sp_mode"], "lie");
    assert_eq!(value["gerstenhaber"], true);
    assert_eq!(value["algebra"], "sp");
    assert!(value.get("sp_note").is_none());
    let paper = stdout_json(&run(&[
        "closure", "--m", "1", "--lambda", "[2]", "--sp-mode", "paper",
    ]));
    assert_eq!(paper["sp_mode"], "paper");
    assert_eq!(paper["sp_note"], "group condition");
}

#[test]
fn text_format_prints_explicit_operators() {
    let out = run(&["closure", "--n", "2", "--lambda", "[2]", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("closure  algebra=gl  n=2  lambda=[2]"));
    assert!(text.contains("x_1_2*x_2_1 + x_1_1^2"));
    assert!(text.is_ascii());
}

#[test]
fn charts_output_matches_the_atlas() {
    let value = stdout_json(&run(&["charts", "--n", "2", "--lambda", "[2]"]));
    assert_eq!(value["chart_count"], 4);
    assert_eq!(value["origin_warning"], false);
    let origin = stdout_json(&run(&["charts", "--n", "2", "--lambda", "[1,1]"]));
    assert_eq!(origin["chart_count"], 0);
    assert_eq!(origin["origin_warning"], true);
}

#[test]
fn weyman_comparison_reports_the_raw_counts() {
    let value = stdout_json(&run(&[
        "weyman", "--n", "3", "--lambda", "[2,1]", "--compare", "--samples", "5", "--seed", "3",
    ]));
    assert_eq!(value["spanning_count"], 21);
    assert_eq!(value["distinct_count"], 15);
    let comparison = &value["comparison"];
    assert_eq!(comparison["closure_count"], 18);
    assert_eq!(comparison["weyman_spanning_count"], 21);
    assert_eq!(comparison["oracle_agreement"], true);
}

#[test]
fn constraint_counts_match_the_printed_cardinalities() {
    let value = stdout_json(&run(&["constraints", "--m", "2", "--mode", "paper"]));
    assert_eq!(value["total_count"], 16);
    let lie = stdout_json(&run(&["constraints", "--m", "2", "--mode", "lie"]));
    assert_eq!(lie["total_count"], 6);
}

#[test]
fn bound_envelope_uses_the_pinned_keys() {
    let value = stdout_json(&run(&["bound", "--n", "3", "--lambda", "[2,1]"]));
    assert_eq!(value["paper_bound"], 1);
    assert_eq!(value["prime"], 2);
    assert_eq!(value["max_coeff_F"], 1);
    assert_eq!(value["max_coeff_H"], 1);
}

#[test]
fn reduce_pipes_closure_output() {
    let closure = run(&["closure", "--n", "2", "--lambda", "[2]"]);
    assert!(closure.status.success());
    let reduced = run_with_stdin(&["reduce", "--p", "5"], &closure.stdout);
    let value = stdout_json(&reduced);
    assert_eq!(value["p"], 5);
    assert_eq!(value["equation_set"]["modulus"], 5);
    // double piping: reduce output is itself a valid equation-set document
    let again = run_with_stdin(&["reduce", "--p", "5"], &reduced.stdout);
    assert!(again.status.success());
    // composite modulus refused as a domain error
    let composite = run_with_stdin(&["reduce", "--p", "6"], &closure.stdout);
    assert_eq!(composite.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&composite.stderr).contains("not prime"));
    // garbage stdin is a domain error
    let garbage = run_with_stdin(&["reduce", "--p", "5"], b"not json");
    assert_eq!(garbage.status.code(), Some(1));
}

#[test]
fn cache_is_transparent_and_flag_order_independent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold = run(&["--cache-dir", cache, "closure", "--n", "3", "--lambda", "[2,1]"]);
    assert!(cold.status.success());
    let entries = || {
        std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(Result::ok)
            .count()
    };
    assert_eq!(entries(), 1);
    let warm = run(&["--cache-dir", cache, "closure", "--n", "3", "--lambda", "[2,1]"]);
    assert_eq!(cold.stdout, warm.stdout);
    // reordered flags and a different output format reuse the same entry
    let reordered = run(&[
        "--cache-dir", cache, "closure", "--lambda", "[2,1]", "--format", "text", "--n", "3",
    ]);
    assert!(reordered.status.success());
    assert_eq!(entries(), 1);
    // the environment variable is an alternative spelling of the flag
    let via_env = bin()
        .env("ORBITFORGE_CACHE_DIR", cache)
        .args(["closure", "--n", "3", "--lambda", "[2,1]"])
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, cold.stdout);
    assert_eq!(entries(), 1);
    // a fresh selector gets its own entry
    let other = run(&["--cache-dir", cache, "closure", "--n", "3", "--lambda", "[3]"]);
    assert!(other.status.success());
    assert_eq!(entries(), 2);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold = run(&["--cache-dir", cache, "closure", "--n", "2", "--lambda", "[2]"]);
    assert!(cold.status.success());
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, b"{ truncated").unwrap();
    let warm = run(&["--cache-dir", cache, "closure", "--n", "2", "--lambda", "[2]"]);
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn export_closure_declares_ring_and_ideal() {
    let out = run(&["export", "--n", "3", "--lambda", "[2,1]", "--dialect", "singular"]);
    let script = String::from_utf8(out.stdout).unwrap();
    // 9 variables, 18 generators
    assert!(script.contains(
        "ring R = 0, (x_1_1, x_1_2, x_1_3, x_2_1, x_2_2, x_2_3, x_3_1, x_3_2, x_3_3), Dp;"
    ));
    assert_eq!(script.matches("x_1_1*x_2_2 - x_1_2*x_2_1").count(), 1);
    assert!(script.contains("ring: 9 variables over the rationals; generators: 18"));
    assert!(script.lines().last().unwrap().starts_with("//"));
}

#[test]
fn export_chart_includes_the_localization_variable() {
    let out = run(&[
        "export", "--n", "3", "--lambda", "[2,1]", "--source", "charts", "--chart", "0",
    ]);
    let script = String::from_utf8(out.stdout).unwrap();
    assert!(script.contains("x_3_3, t), Dp;"));
    assert!(script.contains("ring: 10 variables over the rationals; generators: 19"));
    // chart index must exist; [2,1] has 9 charts
    let oob = run(&[
        "export", "--n", "3", "--lambda", "[2,1]", "--source", "charts", "--chart", "9",
    ]);
    assert_eq!(oob.status.code(), Some(1));
    let missing = run(&["export", "--n", "3", "--lambda", "[2,1]", "--source", "charts"]);
    assert_eq!(missing.status.code(), Some(2));
    let origin = run(&[
        "export", "--n", "2", "--lambda", "[1,1]", "--source", "charts", "--chart", "0",
    ]);
    assert_eq!(origin.status.code(), Some(1));
}

#[test]
fn export_dialects_agree_on_generator_count() {
    let singular = run(&["export", "--n", "2", "--lambda", "[2]", "--dialect", "singular"]);
    let macaulay = run(&["export", "--n", "2", "--lambda", "[2]", "--dialect", "macaulay2"]);
    let s = String::from_utf8(singular.stdout).unwrap();
    let m = String::from_utf8(macaulay.stdout).unwrap();
    assert!(s.contains("generators: 5"));
    assert!(m.contains("generators: 5"));
    assert!(m.contains("QQ[x_(1,1), x_(1,2), x_(2,1), x_(2,2), MonomialOrder => GLex];"));
    assert!(m.contains("x_(1,1)*x_(2,2) - x_(1,2)*x_(2,1)"));
}

#[test]
fn verify_json_reports_every_check() {
    let value = stdout_json(&run(&[
        "verify", "--max-n", "3", "--samples", "3", "--seed", "7", "--format", "json",
    ]));
    assert_eq!(value["all_passed"], true);
    assert_eq!(value["checks"].as_array().unwrap().len(), 9);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["closure", "--n", "3", "--lambda", "[2,1]"][..],
        &["weyman", "--n", "3", "--lambda", "[2,1]", "--compare"][..],
        &["oracle", "--max-n", "3", "--samples", "4", "--seed", "2", "--format", "json"][..],
    ] {
        let first = run(args);
        let second = run(args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
