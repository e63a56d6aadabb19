use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const WORKED: &str = r#"{"ontology_id":"example","ontology_type":"type2","lexp":1,"answers":{
  "Q1":{"subs":[50,50,50]},"Q2":{"grade":75},"Q3":{"grade":100},"Q4":{"grade":25},"Q6":{"grade":50},
  "Q7":{"grade":25},"Q8":{"grade":50},"Q9":{"grade":100},"Q10":{"grade":100},"Q11":{"subs":[75,75]},
  "Q12":{"grade":75},"Q13":{"grade":25}}}"#;

fn foca_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_foca"));
    cmd.args(args).env_remove("FOCA_COEFFICIENTS").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn foca(args: &[&str]) -> Output {
    foca_env(args, "", &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name).to_str().unwrap().to_string()
}

#[test]
fn score_reports_total_and_partial() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", WORKED);
    let o = foca(&["score", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Total quality: 0.986278841"));
    let o = foca(&["score", a.to_str().unwrap(), "--roles", "co,re", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["score"]["value"].as_f64().unwrap() - 0.506249674).abs() < 1e-9);
    assert_eq!(v["score"]["nl_used"], 0);
}

#[test]
fn inapplicable_answer_names_the_question() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", &WORKED.replace("type2", "type1"));
    let o = foca(&["score", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Q4"), "{}", stderr(&o));
}

#[test]
fn malformed_answer_file_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(
        dir.path(),
        "a.json",
        r#"{"ontology_id":"x","ontology_type":"type2","lexp":1,"answers":{"Q3":{"grade":50}}}"#,
    );
    let o = foca(&["score", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Q3"));
    let b = put(dir.path(), "b.json", "{not json");
    assert_eq!(foca(&["score", b.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn coefficient_sources_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", WORKED);
    let a = a.to_str().unwrap();
    let zeros = "0,0,0,0,0,0,0";
    assert!(stdout(&foca(&["score", a, "--coefficients", zeros])).contains("Total quality: 0.500000000"));

    let short = foca(&["score", a, "--coefficients", "-0.44,0.03,0.02,0.01,0.02,-0.66"]);
    assert_eq!(short.status.code(), Some(2));
    assert!(stderr(&short).contains("expected 7 coefficients, got 6"));

    let file = put(dir.path(), "c.json", "[0,0,0,0,0,0,0]");
    let f = file.to_str().unwrap();
    assert!(stdout(&foca(&["score", a, "--coef-file", f])).contains("Total quality: 0.500000000"));
    let via_env = foca_env(&["score", a], "", &[("FOCA_COEFFICIENTS", f)]);
    assert!(stdout(&via_env).contains("Total quality: 0.500000000"));
    let overridden = foca_env(&["score", a, "--coefficients", "1,0,0,0,0,0,0"], "", &[("FOCA_COEFFICIENTS", f)]);
    assert!(stdout(&overridden).contains("Total quality: 0.731058579"));

    let both = foca(&["score", a, "--coefficients", zeros, "--coef-file", f]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn unknown_role_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", WORKED);
    let o = foca(&["score", a.to_str().unwrap(), "--roles", "sb,xx"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("xx"));
}

#[test]
fn nl_policy_flag_changes_nl() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", &WORKED.replace(r#","Q13":{"grade":25}"#, ""));
    let strict: serde_json::Value =
        serde_json::from_slice(&foca(&["score", a.to_str().unwrap(), "--format", "json"]).stdout).unwrap();
    let lenient: serde_json::Value = serde_json::from_slice(
        &foca(&["score", a.to_str().unwrap(), "--format", "json", "--nl-policy", "goal-empty"]).stdout,
    )
    .unwrap();
    assert_eq!(strict["score"]["nl_used"], 1);
    assert_eq!(lenient["score"]["nl_used"], 0);
}

#[test]
fn questions_marks_inapplicable() {
    let o = foca(&["questions", "--type", "type1"]);
    let text = stdout(&o);
    assert!(text.contains("Q4 (Conciseness)  [not applicable to type1]"));
    assert!(!text.contains("Q5 (Conciseness)  [not applicable"));
    for g in 1..=5 {
        assert!(text.contains(&format!("Goal {g} (")));
    }
    let v: serde_json::Value = serde_json::from_slice(&foca(&["questions", "--format", "json"]).stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 13);
    let goal5: serde_json::Value =
        serde_json::from_slice(&foca(&["questions", "--goal", "5", "--format", "json"]).stdout).unwrap();
    assert_eq!(goal5.as_array().unwrap().len(), 3);
}

#[test]
fn evaluate_writes_partial_file_on_eof() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = foca_env(&["evaluate", "--output", out.to_str().unwrap()], "onto\n2\ny\nn\n", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("partial answer file"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["incomplete"], true);
    assert_eq!(v["answers"]["Q1"]["grade"], 0);
    assert_eq!(v["answers"]["Q2"]["grade"], 0);
}

#[test]
fn inspect_exit_codes() {
    let mixed = fixture("ontologies/mixed.ttl");
    assert_eq!(foca(&["inspect", &mixed]).status.code(), Some(2));
    let o = foca(&["inspect", &mixed, "--own-ns", "http://example.org/mixed#"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Q12"));
    let bad = foca(&["inspect", &fixture("turtle/errors/missing_dot.ttl"), "--own-ns", "http://a#"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stderr(&bad).contains("line"));
}

#[test]
fn inspect_merge_only_adds_notes() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", WORKED);
    let o = foca(&[
        "inspect",
        &fixture("ontologies/full.ttl"),
        "--own-ns",
        "http://example.org/bike#",
        "--merge",
        a.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let merged: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.inspected.json")).unwrap()).unwrap();
    let original: serde_json::Value = serde_json::from_str(WORKED).unwrap();
    assert_eq!(merged["answers"], original["answers"]);
    assert!(merged["notes"]["Q12"].as_str().unwrap().starts_with("inspect suggests"));
    let scored = foca(&["score", dir.path().join("a.inspected.json").to_str().unwrap()]);
    assert!(stdout(&scored).contains("Total quality: 0.986278841"));
}

#[test]
fn fit_cites_offending_row() {
    let dir = tempfile::tempdir().unwrap();
    let d = put(dir.path(), "d.csv", "y,cov_s,cov_c,cov_r,cov_cp,lexp,nl\n0.5,10,10,10,10,1,0\n1.0,20,20,20,20,0,0\n");
    let o = foca(&["fit", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 2"), "{}", stderr(&o));
}

#[test]
fn fit_rank_deficient_is_numeric() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("y,cov_s,cov_c,cov_r,cov_cp,lexp,nl\n");
    for i in 0..20 {
        text.push_str(&format!("0.{},{},{},0,0,{},0\n", 10 + i * 3, i, i, i % 2));
    }
    let d = put(dir.path(), "d.csv", &text);
    let o = foca(&["fit", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn fit_simulated_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("sim.csv");
    let res = dir.path().join("res.csv");
    let o =
        foca(&["fit", "--simulate", "500", "--seed", "9", "--write-data", data.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let sim: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let again = foca(&["fit", data.to_str().unwrap(), "--residuals", res.to_str().unwrap(), "--format", "json"]);
    let refit: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(sim["n"], 500);
    assert_eq!(sim["coefficients"].as_array().unwrap().len(), 7);
    let (a, b) = (sim["loglik"].as_f64().unwrap(), refit["loglik"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-6 * a.abs(), "{a} vs {b}");
    let lines = fs::read_to_string(&res).unwrap();
    assert_eq!(lines.lines().next(), Some("index,residual"));
    assert_eq!(lines.lines().count(), 501);
}

#[test]
fn report_includes_partials_and_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", WORKED);
    let o = foca(&[
        "report",
        a.to_str().unwrap(),
        "--ttl",
        &fixture("ontologies/full.ttl"),
        "--own-ns",
        "http://example.org/bike#",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["partials"].as_array().unwrap().len(), 4);
    assert_eq!(v["evidence"]["entries"].as_array().unwrap().len(), 4);
    let text = stdout(&foca(&["report", a.to_str().unwrap()]));
    assert!(text.contains("Total quality: 0.986278841"));
    assert!(text.contains("Single-role partial quality"));
    assert_eq!(text, stdout(&foca(&["report", a.to_str().unwrap()])));
}
