//! End-to-end runs of the `stateattack` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stateattack")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn with_model<'a>(cmd: &'a str, rest: &[&'a str], model: &'a str) -> Vec<&'a str> {
    let mut v = vec![cmd, "--model", model];
    v.extend_from_slice(rest);
    v
}

#[test]
fn every_subcommand_runs_on_the_sample_plant() {
    let model = fixture("two_branch_plant.json");
    let spec = fixture("attack_2_4_8_9.json");
    for cmd in [
        "observer",
        "check-classic",
        "build-aobs",
        "check-violation",
        "check-enforced",
        "synthesize",
        "simulate",
        "oracle",
        "export-dot",
    ] {
        let out = run(&with_model(cmd, &["--spec", &spec], &model));
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{cmd} printed nothing");
    }
}

#[test]
fn check_violation_reports_sizes_and_witness() {
    let model = fixture("two_branch_plant.json");
    let v = json(&run(&with_model("check-violation", &["--spec", &fixture("attack_2_4.json")], &model)));
    assert_eq!(v["verdict"], true);
    assert_eq!(v["attack_observer_states"], 34);
    assert_eq!(v["verifier_states"], 16);
    assert!(v["witness"].is_array());
}

#[test]
fn check_enforced_reports_final_verifier() {
    let model = fixture("two_branch_plant.json");
    let spec = fixture("attack_2_4_8_9.json");
    let v = json(&run(&with_model("check-enforced", &["--spec", &spec], &model)));
    assert_eq!(v["verdict"], true);
    assert_eq!(v["final_verifier_states"], 27);
    assert_eq!(v["initial_rank"], 6);
    let strict = json(&run(&with_model("check-enforced", &["--spec", &spec, "--strict-paper"], &model)));
    assert_eq!(strict["final_verifier_states"], 29);
    assert_eq!(strict["reading"], "kept-results");
}

#[test]
fn inline_spec_flags_match_spec_file() {
    let model = fixture("two_branch_plant.json");
    let from_file = run(&with_model("check-enforced", &["--spec", &fixture("attack_2_4_8_9.json")], &model));
    let inline = run(&with_model("check-enforced", &["--attacked", "2,4,8,9", "--budget", "1"], &model));
    assert_eq!(json(&from_file), json(&inline));
}

#[test]
fn synthesize_lists_the_expected_moves() {
    let model = fixture("two_branch_plant.json");
    let v = json(&run(&with_model("synthesize", &["--spec", &fixture("attack_2_4_8_9.json")], &model)));
    assert_eq!(v["enforced"], true);
    let labels: Vec<&str> =
        v["strategy"]["edges"].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    for l in ["ε/N", "a/N", "d/N", "b/Y0", "b/Y1"] {
        assert!(labels.contains(&l), "{l} missing from {labels:?}");
    }
    assert_eq!(v["strategy"]["validation"]["sound"], true);
}

#[test]
fn first_valid_policy_is_reported_unsound() {
    let model = fixture("two_branch_plant.json");
    let args = ["--spec", &fixture("attack_2_4_8_9.json"), "--policy", "first-valid"];
    let v = json(&run(&with_model("synthesize", &args, &model)));
    assert_eq!(v["strategy"]["validation"]["sound"], false);
    assert_eq!(v["strategy"]["validation"]["counterexample"]["kind"], "loop");
}

#[test]
fn simulate_is_deterministic_per_seed() {
    let model = fixture("two_branch_plant.json");
    let spec = fixture("attack_2_4_8_9.json");
    let a = run(&with_model("simulate", &["--spec", &spec, "--seed", "7"], &model));
    let b = run(&with_model("simulate", &["--spec", &spec, "--seed", "7"], &model));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["outcome"], "violated");
    let adv = json(&run(&with_model("simulate", &["--spec", &spec, "--adversarial"], &model)));
    assert_eq!(adv["outcome"], "violated");
}

#[test]
fn fail_on_violation_sets_exit_code() {
    let model = fixture("two_branch_plant.json");
    let spec = fixture("attack_2_4.json");
    assert_eq!(run(&with_model("check-violation", &["--spec", &spec], &model)).status.code(), Some(0));
    let out = run(&with_model("check-violation", &["--spec", &spec, "--fail-on-violation"], &model));
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stdout.is_empty());
}

#[test]
fn bad_inputs_exit_with_two() {
    let model = fixture("two_branch_plant.json");
    let negative = run(&with_model("check-violation", &["--attacked", "2", "--budget", "-1"], &model));
    assert_eq!(negative.status.code(), Some(2));
    let unknown = run(&with_model("check-violation", &["--attacked", "nope", "--budget", "1"], &model));
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("nope"));
    let missing = run(&["observer", "--model", "/nonexistent/model.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn reserved_event_names_are_rejected() {
    let dir = std::env::temp_dir().join(format!("stateattack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reserved.json");
    std::fs::write(
        &path,
        r#"{"states": ["p", "q"], "events": ["Y"], "transitions": [["p", "Y", "q"]], "initial": ["p"]}"#,
    )
    .unwrap();
    let out = run(&["observer", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`Y` is reserved"), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("stateattack-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fv.dot");
    let model = fixture("two_branch_plant.json");
    let args = ["--spec", &fixture("attack_2_4_8_9.json"), "--what", "final-verifier", "--out", path.to_str().unwrap()];
    let out = run(&with_model("export-dot", &args, &model));
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("digraph final_verifier {"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dot_format_applies_to_reporting_commands() {
    let model = fixture("two_branch_plant.json");
    let out = run(&with_model("observer", &["--format", "dot"], &model));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("digraph observer {"));
    let out = run(&with_model("check-violation", &["--spec", &fixture("attack_2_4.json"), "--format", "dot"], &model));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("digraph verifier {"));
}

#[test]
fn opacity_spec_file_is_accepted() {
    let model = fixture("two_branch_plant.json");
    let v = json(&run(&with_model("oracle", &["--spec", &fixture("opacity_7_8.json")], &model)));
    assert_eq!(v["agree"], true);
}
