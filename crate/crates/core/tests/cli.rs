//! Command-line behaviour: exit codes, output targets and golden reports.
//! Set UPDATE_GOLDEN=1 to rewrite tests/golden after an intended change.

use std::fs;
use std::path::{Path, PathBuf};

use galcoh::cli::run;
use serde_json::Value;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn path(rel: &str) -> String {
    crate_dir().join(rel).to_str().expect("utf-8 path").to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["galcoh"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 stdout"),
        String::from_utf8(err).expect("utf-8 stderr"),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("report is JSON")
}

#[test]
fn free_scenario_reports_cf_and_cd() {
    let (code, out, _) = invoke(&["scenario", "run", &path("scenarios/free_3_2_4.json")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema"], "galcoh.report/1");
    assert_eq!(v["invariants"]["cf"], serde_json::json!({"status": "finite", "value": 2}));
    assert_eq!(v["invariants"]["cd"], serde_json::json!({"finite": 4}));
}

#[test]
fn q2_degree_two_is_not_free() {
    let (code, out, _) = invoke(&["criteria", "check", &path("scenarios/q2.json"), "--degree", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"]["free"], false);
    assert_eq!(v["verdict"]["trivial"], true);
}

#[test]
fn malformed_coordinates_exit_2() {
    let (code, out, err) = invoke(&["scenario", "run", &path("tests/data/malformed_coordinates.json")]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("3 coordinates"), "{err}");
}

#[test]
fn syntax_errors_carry_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    fs::write(&file, "{\n  \"schema\": \"galcoh.scenario/1\",\n  \"p\": 3,,\n}").unwrap();
    let (code, _, err) = invoke(&["scenario", "run", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn missing_file_and_unknown_fixture_exit_2() {
    assert_eq!(invoke(&["scenario", "run", "/nonexistent/x.json"]).0, 2);
    assert_eq!(invoke(&["fixtures", "show", "nope"]).0, 2);
    assert_eq!(invoke(&["scenario", "frobnicate"]).0, 2);
}

#[test]
fn corrupted_fixture_exits_3() {
    let (code, out, _) = invoke(&["scenario", "run", &path("tests/data/q2_corrupted.json")]);
    assert_eq!(code, 3);
    let v = json(&out);
    assert_eq!(v["status"], "inconsistent");
    assert_eq!(v["equivalence"]["consistent"], false);
}

#[test]
fn degree_past_a_truncation_is_rejected() {
    let (code, _, err) = invoke(&["criteria", "check", &path("scenarios/henselian_2_8.json"), "--degree", "9"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn incomplete_invariants_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("short.json");
    fs::write(
        &file,
        r#"{"schema": "galcoh.scenario/1", "p": 3,
            "model": {"kind": "direct_sum", "m1": 2, "m2": 4},
            "a_class": "left_generator", "degree_cap": 2}"#,
    )
    .unwrap();
    let (code, out, _) = invoke(&["scenario", "run", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["status"], "incomplete");
}

#[test]
fn module_and_chain_files() {
    let (code, out, _) = invoke(&["module", "analyze", &path("scenarios/module_jordan_3.json")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["module"]["blocks"], serde_json::json!([3, 2]));
    let (code, out, _) = invoke(&["exactness", "verify", &path("scenarios/chain_f2.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("\"exact\": true"), "{out}");
    let (code, _, _) = invoke(&["exactness", "verify", &path("scenarios/q2.json")]);
    assert_eq!(code, 0);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.txt");
    let (code, out, _) = invoke(&[
        "--format",
        "text",
        "--out",
        target.to_str().unwrap(),
        "scenario",
        "run",
        &path("scenarios/q2.json"),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(fs::read_to_string(&target).unwrap().contains("cf = 2"));
}

#[test]
fn fixtures_round_trip_through_show() {
    let dir = tempfile::tempdir().unwrap();
    let (_, listing, _) = invoke(&["fixtures", "list"]);
    let names: Vec<String> = json(&listing)["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap().to_string())
        .collect();
    assert!(names.len() >= 7);
    for name in names {
        let (code, shown, _) = invoke(&["fixtures", "show", &name]);
        assert_eq!(code, 0);
        let file = dir.path().join(format!("{name}.json"));
        fs::write(&file, shown).unwrap();
        let (code, _, err) = invoke(&["scenario", "run", file.to_str().unwrap()]);
        let expected = if name == "q2_corrupted" { 3 } else { 0 };
        assert_eq!(code, expected, "{name}: {err}");
    }
}

fn bundled() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(crate_dir().join("scenarios"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

fn command_for(file: &Path) -> Vec<String> {
    let name = file.file_name().unwrap().to_str().unwrap();
    let verb: &[&str] = if name.starts_with("module_") {
        &["module", "analyze"]
    } else if name.starts_with("chain_") {
        &["exactness", "verify"]
    } else {
        &["scenario", "run"]
    };
    verb.iter().map(|s| s.to_string()).chain([file.to_str().unwrap().to_string()]).collect()
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let golden_dir = crate_dir().join("tests/golden");
    for file in bundled() {
        let stem = file.file_stem().unwrap().to_str().unwrap().to_string();
        let args = command_for(&file);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        for (format, ext) in [("json", "json"), ("text", "txt")] {
            let mut full = vec!["--format", format];
            full.extend_from_slice(&args);
            let (code, out, err) = invoke(&full);
            assert_eq!(code, 0, "{stem}: {err}");
            // Paths in the echo are made relative so goldens are portable.
            let out = out.replace(&format!("{}/", crate_dir().display()), "");
            let golden = golden_dir.join(format!("{stem}.{ext}"));
            if update {
                fs::write(&golden, &out).unwrap();
            } else {
                let expected = fs::read_to_string(&golden)
                    .unwrap_or_else(|_| panic!("missing {}; run with UPDATE_GOLDEN=1", golden.display()));
                assert_eq!(out, expected, "{} differs from its golden report", golden.display());
            }
        }
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for file in bundled() {
        let args = command_for(&file);
        if args[0] != "scenario" {
            continue;
        }
        let (_, one, _) = invoke(&["scenario", "run", &args[2], "--threads", "1"]);
        for threads in ["2", "3", "8"] {
            let (_, many, _) = invoke(&["scenario", "run", &args[2], "--threads", threads]);
            assert_eq!(one, many, "{} with {threads} threads", args[2]);
        }
        let (_, again, _) = invoke(&["scenario", "run", &args[2]]);
        assert_eq!(one, again);
    }
}
