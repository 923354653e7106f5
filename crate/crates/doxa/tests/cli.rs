use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .display()
        .to_string()
}

fn doxa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doxa")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("doxa-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn validate_reports_axioms() {
    let o = doxa(&["validate", &example("example1.structure")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("partitional: yes; KD45: yes"));
}

#[test]
fn delusional_prior_of_example2() {
    let o = doxa(&["prior", "--mode", "delusional", &example("example2.structure")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/3 1/3 1/3\n");
}

#[test]
fn missing_prior_prints_certificate() {
    let o = doxa(&["prior", "--mode", "standard", &example("example3-closing.structure")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("NO-PRIOR\nseparating bet"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn no_bet_in_example3() {
    let o = doxa(&["bet", "--state", "3", &example("example3.structure")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("NO-BET at 3"));
    assert!(text.contains("prior (global): 1/5 1/5 0 0 1/5 1/5 1/5"));
}

#[test]
fn json_and_text_carry_the_same_numbers() {
    let file = example("example2.structure");
    let text = stdout(&doxa(&["bet", "--state", "w2", &file]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&doxa(&["--json", "bet", "--state", "w2", &file]))).unwrap();
    assert_eq!(json["bet"], true);
    for p in json["payoffs"].as_array().unwrap() {
        let values: Vec<&str> = p["values"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        assert!(text.contains(&format!("{}: {}", p["player"].as_str().unwrap(), values.join(" "))));
    }
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&doxa(&["prior", "--json", "--mode", "delusional", &file]))).unwrap();
    assert_eq!(json["prior"], serde_json::json!(["1/3", "1/3", "1/3"]));
}

#[test]
fn bad_input_exits_2_with_location() {
    let bad = scratch("bad.structure", "{\"format_version\": 1,\n \"states\": [\"a\"],\n \"player\": []}");
    let o = doxa(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    let bad = scratch(
        "mass.structure",
        r#"{"format_version": 1, "states": ["a"], "players": ["i"], "types": {"i": {"a": {"a": "2/3"}}}}"#,
    );
    let o = doxa(&["classify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("types.i.a"));

    let o = doxa(&["bet", "--state", "nowhere", &example("example3.structure")]);
    assert_eq!(o.status.code(), Some(2));
    let o = doxa(&["validate", "--frobnicate", &example("example1.structure")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_exits_1() {
    let split = scratch(
        "split.structure",
        r#"{"format_version": 1, "states": ["w", "x", "y", "z"], "players": ["1", "2"], "types": {
            "1": {"w": {"x": "1"}, "x": {"x": "1"}, "y": {"y": "1/3", "z": "2/3"}, "z": {"y": "1/3", "z": "2/3"}},
            "2": {"w": {"y": "1/2", "z": "1/2"}, "x": {"x": "1"}, "y": {"y": "1/2", "z": "1/2"}, "z": {"y": "1/2", "z": "1/2"}}}}"#,
    );
    let o = doxa(&["check", "--theorem", "1", &split]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("theorem1 at w FAIL"));
    let o = doxa(&["check", "--theorem", "2", &split]);
    assert_eq!(o.status.code(), Some(0));
    let o = doxa(&["check", "--theorem", "1", &example("example3.structure")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn small_sweep_passes() {
    let o = doxa(&["check", "--theorem", "prop1", "--count", "40", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().starts_with("prop1: 40 instances, pass 40, fail 0"));
}

#[test]
fn analyze_notes_coexistence() {
    let o = doxa(&["analyze", &example("example2.structure")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("theorem1 at w1 N/A: common delusional prior and common-belief agreeable bet coexist"));
}

#[test]
fn simulate_trace() {
    let o = doxa(&["simulate", "--config", &example("cascade.market"), "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(text.contains("    3  Bob        {4}                  1        Buy"));
    assert!(text.ends_with("fixed point after 3 round(s); true state 2\n"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&doxa(&["--json", "simulate", "--config", &example("cascade.market")]))).unwrap();
    assert_eq!(json["rounds"], serde_json::Value::Null);
    assert_eq!(json["last_round"]["traders"][0]["set"], serde_json::json!(["4"]));
}
