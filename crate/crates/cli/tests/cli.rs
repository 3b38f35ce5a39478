use std::process::{Command, Output};

use elie::document::ReportDocument;

fn elie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elie"))
        .args(args)
        .env_remove("ELIE_HEIGHT_BUDGET")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> ReportDocument {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

#[test]
fn verify_vertex_a3() {
    let out = elie(&["verify", "vertex", "--family", "A", "--rank", "3", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = report(&out);
    let r = &doc.reports[0];
    let serre: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("vertex relation")).collect();
    assert_eq!(serre.len(), 6);
    assert!(serre.iter().all(|c| c.status.to_string() == "pass"));
    assert_eq!(doc.config.seed, 0);
}

#[test]
fn zero_parameters_are_trivially_flat() {
    let out = elie(&["flatness", "--family", "A", "--rank", "2", "--params", r#"{"a1":0,"a2":0}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).summary.pass, 1);
}

#[test]
fn form_report_embeds_the_gram_matrix() {
    let out = elie(&["form", "--n", "6", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"-b1*b2*b3*b4\""));
}

#[test]
fn corrupted_relation_exits_with_one() {
    let out = elie(&["verify", "vertex", "--family", "B", "--rank", "2", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).summary.fail, 1);
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.gcm");
    let out = elie(&["verify", "vertex", "--gcm-file", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let bad = dir.path().join("bad.gcm");
    std::fs::write(&bad, "2\n2 -1\n0 2\n").unwrap();
    assert_eq!(elie(&["verify", "vertex", "--gcm-file", bad.to_str().unwrap()]).status.code(), Some(2));

    let out = elie(&["verify", "vertex", "--family", "A", "--rank", "2", "--params", r#"{"q":1}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gcm_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let gcm = dir.path().join("a1a1.gcm");
    std::fs::write(&gcm, "2\n2 0\n0 2\n").unwrap();
    let out_path = dir.path().join("report.json");
    let out = elie(&[
        "verify", "vertex", "--gcm-file", gcm.to_str().unwrap(), "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: ReportDocument = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert!(doc.reports[0].model.contains("Kac-Moody"));
}

#[test]
fn height_budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_elie"))
        .args(["verify", "vertex", "--family", "G", "--backend", "km"])
        .env("ELIE_HEIGHT_BUDGET", "3")
        .output()
        .unwrap();
    let doc = report(&out);
    assert_eq!(doc.config.budgets.height, Some(3));
    assert_eq!(doc.reports[0].budgets.height, Some(3));
    assert_eq!(out.status.code(), Some(2), "G2 relations need height 4");
}

#[test]
fn identical_runs_have_identical_bodies() {
    let a = report(&elie(&["run", "thm1_9", "--seed", "5"]));
    let b = report(&elie(&["run", "thm1_9", "--seed", "5"]));
    assert_eq!(a.body(), b.body());
    let c = report(&elie(&["run", "thm1_9", "--seed", "6"]));
    assert_ne!(a.body(), c.body());
}

#[test]
fn suites_listing() {
    let out = elie(&["suites"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 18);
    assert!(text.lines().any(|l| l.starts_with("thm1_8c") && l.contains("affine")));
}

#[test]
fn commands_cover_the_other_modules() {
    for args in [
        &["conjugate", "--scheme", "middle-last"][..],
        &["conjugate", "--scheme", "conical", "--family", "D", "--rank", "4", "--root", "2"],
        &["conjugate", "--scheme", "peacock", "--family", "D", "--rank", "4", "--root", "2", "--j-plus", "1"],
        &["decompose", "--n", "3"],
        &["verify", "edge", "--family", "C", "--rank", "3", "--kind", "C_CHAIN"],
        &["verify", "edge", "--family", "A", "--rank", "4", "--kind", "TYPE_A_ROOT_2", "--params", r#"{"b2":0}"#],
        &["flatness", "--family", "AFFINE_A", "--rank", "3", "--kind", "AFFINE_A"],
        &["crosscheck", "--family", "A", "--rank", "3", "--pairs", "10"],
    ] {
        let out = elie(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
