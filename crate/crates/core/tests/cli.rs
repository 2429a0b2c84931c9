use std::io::Write;
use std::process::Command;

use lie_cert::cli::execute;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let out = execute(&argv);
    (out.code, out.stdout, out.stderr)
}

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("report is JSON")
}

#[test]
fn fg_suite_on_g2() {
    let (code, out, err) = run(&["check-fg", "--type", "G2"]);
    assert_eq!(code, 0, "{err}");
    let r = json(&out);
    assert_eq!(r["schema"], "lie-cert-report/1");
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["config"]["types"], serde_json::json!(["G2"]));
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "fg-properties"));
    for c in checks {
        assert!(!c["reference"].as_str().unwrap().is_empty());
        assert!(c.get("timing_ms").is_none());
    }
    assert!(!r["skipped"].as_array().unwrap().is_empty());
}

#[test]
fn weyl_suite_on_e6_includes_numerology() {
    let (code, out, _) = run(&["check-weyl", "--type", "E6", "--emit", "json"]);
    assert_eq!(code, 0);
    let r = json(&out);
    let names: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["weyl-theorem", "e6-numerology"]);
}

#[test]
fn strata_suite_and_denominator_bound() {
    assert_eq!(run(&["check-strata", "--type", "A2,B2"]).0, 0);
    assert_eq!(run(&["check-strata", "--type", "A2", "--denominator-bound", "6"]).0, 0);
    // a grid without the barycenter cannot reproduce it
    let (code, out, _) = run(&["check-strata", "--type", "A2", "--denominator-bound", "4"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["verdict"], "fail");
}

#[test]
fn connection_files() {
    for (file, expected) in [
        ("sl2_fg_jordan.json", 0),
        ("a2_transposition.json", 0),
        ("a2_regular_singular.json", 0),
        ("a2_outside_v_b.json", 1),
        ("a1_not_commuting.json", 1),
    ] {
        let path = data(file);
        let (code, out, err) = run(&["check-conn", "--in", &path]);
        assert_eq!(code, expected, "{file}: {err}");
        assert_eq!(json(&out)["checks"].as_array().unwrap().len(), 1);
    }
    let (_, out, _) = run(&["check-conn", "--in", &data("sl2_fg_jordan.json")]);
    let chain = &json(&out)["checks"][0]["witness"]["chain"];
    assert_eq!(chain["irregularity"], 1);
    assert_eq!(chain["slope"], "1/2");
    assert_eq!(chain["equality"], true);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\"type\": \"A2\", \"rank\": 3}}").unwrap();
    let (code, out, err) = run(&["check-conn", "--in", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["check-conn", "--in", "/nonexistent/conn.json"]).0, 2);
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(run(&["check-weyl", "--type", "E9"]).0, 2);
    assert_eq!(run(&["check-weyl", "--type", "E7"]).0, 2);
    assert_eq!(run(&["check-weyl", "--type", "E7", "--allow-large"]).0, 2);
    assert_eq!(run(&["check-fg", "--emit", "xml"]).0, 2);
    assert_eq!(run(&["check-fg", "--seed", "minus-one"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-weyl"));
}

#[test]
fn markdown_and_timing() {
    let (code, out, _) = run(&["check-fg", "--type", "A1", "--emit", "md", "--timing"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# lie-cert report"));
    assert!(out.contains("| fg-properties ("));
    assert!(out.trim_end().ends_with("verdict: pass"));
    let (_, out, _) = run(&["check-fg", "--type", "A1", "--timing"]);
    assert!(json(&out)["checks"][0]["timing_ms"].is_u64());
}

#[test]
fn binary_matches_library_entry_point() {
    let args = ["check-all", "--type", "A2,G2", "--seed", "3", "--samples", "30"];
    let out = Command::new(env!("CARGO_BIN_EXE_lie-cert"))
        .args(args)
        .output()
        .unwrap();
    let (code, stdout, _) = run(&args);
    assert_eq!(out.status.code(), Some(code));
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_lie-cert"))
        .args(["check-weyl", "--type", "Z3"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}

#[test]
fn seed_changes_samples_but_not_verdicts() {
    let (a, out_a, _) = run(&["check-all", "--type", "B2", "--seed", "1", "--samples", "40"]);
    let (b, out_b, _) = run(&["check-all", "--type", "B2", "--seed", "2", "--samples", "40"]);
    assert_eq!((a, b), (0, 0));
    assert_ne!(out_a, out_b);
}
