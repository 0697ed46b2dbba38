use std::process::{Command, Output};

use isoprod::report::{csv_to_rows, Report};

fn isoprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoprod"))
        .args(args)
        .env_remove("ISOPROD_THREADS")
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = isoprod(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

#[test]
fn classify_abelian_default_run() {
    let out = isoprod(&["classify-abelian"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("golden table: match"));
    let r = json_report(&["classify-abelian"]);
    assert_eq!(r.records.len(), 4);
    assert!(r.golden.unwrap().matches);
}

#[test]
fn classify_abelian_csv_has_header_and_four_rows() {
    let out = isoprod(&["classify-abelian", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "label,group,order,m,n,gC,gF,components,dimension");
    assert_eq!(csv_to_rows(&text).unwrap().len(), 4);
}

#[test]
fn replay_appends_four_passing_traces() {
    let r = json_report(&["classify-abelian", "--replay-section6"]);
    assert_eq!(r.traces.len(), 4);
    assert!(r.traces.iter().all(|t| t.all_passed()));
}

#[test]
fn golden_mismatch_exits_with_one() {
    let dir = std::env::temp_dir().join(format!("isoprod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("golden.json");
    let mut rows: Vec<serde_json::Value> =
        serde_json::from_str(isoprod::report::GOLDEN_ABELIAN).unwrap();
    rows[2]["components"] = 1.into();
    std::fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
    let out = isoprod(&["classify-abelian", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("golden mismatch"));
    // --no-golden turns the comparison off entirely.
    assert_eq!(
        isoprod(&["classify-abelian", "--no-golden"]).status.code(),
        Some(0)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("isoprod-out-{}.json", std::process::id()));
    let out = isoprod(&[
        "classify-abelian",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.records.len(), 4);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_paper_gives_six_rows() {
    let r = json_report(&["nonabelian", "--verify-paper"]);
    assert_eq!(r.records.len(), 6);
    assert!(r.golden.unwrap().matches);
}

#[test]
fn nonabelian_small_orders() {
    let r = json_report(&["nonabelian", "--max-order", "6"]);
    let rows: Vec<(&str, &str, &str)> = r
        .records
        .iter()
        .map(|x| (x.group.as_str(), x.m.as_str(), x.n.as_str()))
        .collect();
    assert_eq!(rows, [("S3", "2^6", "3")]);
    let r = json_report(&["nonabelian", "--max-order", "4"]);
    assert!(r.records.is_empty());
}

#[test]
fn nonabelian_default_search_contains_the_six_rows() {
    let r = json_report(&["nonabelian"]);
    assert!(r.golden.as_ref().unwrap().matches);
    assert_eq!(
        r.records
            .iter()
            .filter(|x| x.in_paper == Some(true))
            .count(),
        6
    );
    assert!(!r.warnings.is_empty(), "catalog gaps are reported");
    assert!(r.catalog.contains("nonabelian"));
}

#[test]
fn orbits_examples() {
    let classes = |g: &str, m: &str, n: &str| {
        let r = json_report(&["orbits", g, m, n]);
        let o = r.orbits.unwrap();
        (o.pairs, o.classes.len())
    };
    assert_eq!(classes("Z2xZ4", "(0|2^2,4^2)", "(1|2^2)").1, 2);
    assert_eq!(classes("Z2xZ2", "(0|2^6)", "(1|2^2)").1, 1);
    assert_eq!(classes("Z4", "(0|2^2,4^2)", "(1|2^2)"), (0, 0));
    assert_eq!(classes("Z4", "(0|2^6)", "(1|2^2)"), (0, 0));
}

#[test]
fn orbit_genus_failure_is_a_warning() {
    let r = json_report(&["orbits", "Z4", "(0|2^2,4^2)", "(1|2^2)"]);
    assert!(r.warnings.iter().any(|w| w.contains("at least 3")));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["frobnicate"],
        vec!["orbits", "Q9", "(0|2^6)", "(1|2^2)"],
        vec!["orbits", "Z2xZ2", "(0|2^2,3)", "(1|2^2)"],
        vec!["orbits", "Z2xZ2", "(1|2^2)", "(1|2^2)"],
        vec!["orbits", "Z2xZ2", "(0|2^x)", "(1|2^2)"],
        vec!["classify-abelian", "--format", "yaml"],
        vec!["classify-abelian", "--golden", "/nonexistent/golden.json"],
    ] {
        let out = isoprod(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn spec_errors_name_the_position() {
    let out = isoprod(&["orbits", "Z2 x Q8", "(0|2^6)", "(1|2^2)"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_isoprod"))
        .args(["classify-abelian"])
        .env("ISOPROD_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn records_do_not_depend_on_thread_count() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_isoprod"))
            .args(["classify-abelian", "--format", "json"])
            .env("ISOPROD_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
        serde_json::to_string(&(r.records, r.exclusions)).unwrap()
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("1"));
}
