//! End-to-end tests against the built binary: exit codes, report shapes,
//! document round-trips and the countermodel battery.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tdl")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("TDL_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

#[test]
fn check_valid_fixture_exits_zero() {
    let out = run(&["check", fixture("simple-six.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("valid: 6 elements"));
    assert!(text.contains("invariant elements: {0,1}"));
    assert!(text.contains("tense filters: 2"));
    assert!(text.contains("boolean: false; heyting: true; demorgan: false"));
}

#[test]
fn check_violating_fixture_exits_one_with_witness() {
    let out = run(&["check", fixture("bad-t4.json").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("t4 at (0,1)"));
}

#[test]
fn check_malformed_file_exits_two() {
    let dir = std::env::temp_dir();
    let path = dir.join("tdl-malformed.json");
    std::fs::write(&path, "{\"type\": \"tdl-algebra\", \"elements\": [\"0\"]").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    // Unknown fields are rejected too.
    let path2 = dir.join("tdl-unknown-field.json");
    std::fs::write(
        &path2,
        r#"{"type":"tdl-algebra","elements":["0"],"leq":[],"G":{"0":"0"},"H":{"0":"0"},"F":{"0":"0"},"P":{"0":"0"},"extra":1}"#,
    )
    .unwrap();
    let out = run(&["check", path2.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_demorgan_fixture() {
    let out = run(&["check", fixture("boolean-square.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("boolean: true; heyting: true; demorgan: true"));
}

#[test]
fn emitted_documents_reparse_and_revalidate() {
    let dir = std::env::temp_dir();

    // Algebra -> dual frame -> complex algebra -> check.
    let frame_path = dir.join("tdl-dual.json");
    let out = run(&[
        "dual",
        fixture("simple-six.json").to_str().unwrap(),
        "--out",
        frame_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let complex_path = dir.join("tdl-complex.json");
    let out = run(&[
        "complex",
        frame_path.to_str().unwrap(),
        "--out",
        complex_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&["check", complex_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("valid: 6 elements"));

    // Emitting is deterministic byte for byte.
    let frame_path2 = dir.join("tdl-dual2.json");
    let out = run(&[
        "dual",
        fixture("simple-six.json").to_str().unwrap(),
        "--out",
        frame_path2.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        std::fs::read_to_string(&frame_path).unwrap(),
        std::fs::read_to_string(&frame_path2).unwrap()
    );
}

#[test]
fn dual_space_of_the_six_element_fixture() {
    let out = run(&["dual", fixture("simple-six.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["type"], "tdl-frame");
    assert_eq!(doc["points"].as_array().unwrap().len(), 3);
    assert_eq!(doc["R"].as_array().unwrap().len(), 4);
}

#[test]
fn complex_of_one_point_frame_is_the_two_chain() {
    let dir = std::env::temp_dir();
    let path = dir.join("tdl-one-point-frame.json");
    std::fs::write(
        &path,
        r#"{"type":"tdl-frame","points":["w"],"leq":[],"R":[]}"#,
    )
    .unwrap();
    let out = run(&["complex", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["type"], "tdl-algebra");
    assert_eq!(doc["elements"].as_array().unwrap().len(), 2);
    // Empty relation: G is constantly the top, F constantly the bottom.
    assert_eq!(doc["G"]["u0"], "u1");
    assert_eq!(doc["F"]["u1"], "u0");
}

#[test]
fn roundtrip_commands() {
    let out = run(&["roundtrip", fixture("simple-six.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("sigma and h are isomorphisms"));

    let out = run(&["roundtrip", fixture("chain-frame.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("epsilon and k are isomorphisms"));
}

#[test]
fn congruence_reports() {
    let out = run(&["simple", fixture("simple-six.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("simple: yes; congruences: 2"));

    let out = run(&["si", fixture("boolean-square.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("simple: no; SI: no; congruences: 4"));

    let out = run(&["congruences", fixture("simple-six.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("congruences: 2"));
}

#[test]
fn prove_and_unknown_exit_codes() {
    let out = run(&["prove", "--system", "lt", "p => G P p"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[gp]"));

    let out = run(&["prove", "--system", "lt", "--depth", "8", "F p => p"]);
    assert_eq!(code(&out), 3);

    let out = run(&["prove", "bad ->"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn valid_command() {
    let six = fixture("simple-six.json");
    let out = run(&["valid", "--algebra", six.to_str().unwrap(), "p => p"]);
    assert_eq!(code(&out), 0);
    let out = run(&["valid", "--algebra", six.to_str().unwrap(), "F p => p"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("invalid at p = b"));
}

#[test]
fn countermodel_battery() {
    for refutable in ["F p => p", "G p => p", "p => G F p", "p => F p"] {
        let out = run(&["countermodel", "--max-size", "6", refutable]);
        assert_eq!(code(&out), 1, "{refutable}");
        assert!(stdout(&out).contains("countermodel found"));
    }
    for valid in [
        "p => G P p",
        "p => H F p",
        "G(p|q) => G p | F q",
        "G p & F q => F(p & q)",
    ] {
        let out = run(&["countermodel", "--max-size", "6", valid]);
        assert_eq!(code(&out), 0, "{valid}");
        assert!(stdout(&out).contains("no countermodel"));
    }
}

#[test]
fn env_bound_is_honored() {
    let out = Command::new(bin())
        .args(["countermodel", "p => G F p"])
        .env("TDL_MAX_SIZE", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("at most 1"));
}

#[test]
fn kripke_commands() {
    let model = fixture("chain-model.json");
    let out = run(&["kripke", "--model", model.to_str().unwrap(), "F p"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("extension: {x,y}"));

    let out = run(&["kripke", "--model", model.to_str().unwrap(), "p => G P p"]);
    assert_eq!(code(&out), 0);

    let out = run(&["kripke", "--model", model.to_str().unwrap(), "F p => p"]);
    assert_eq!(code(&out), 1);

    // The chain frame's relation is reflexive, so G p => p is frame-valid
    // there; F p => p is not.
    let frame = fixture("chain-frame.json");
    let out = run(&["kripke", "--frame", frame.to_str().unwrap(), "G p => p"]);
    assert_eq!(code(&out), 0);
    let out = run(&["kripke", "--frame", frame.to_str().unwrap(), "F p => p"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("invalid in the frame"));

    let out = run(&["kripke", "--frame", frame.to_str().unwrap(), "p => G P p"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn scripts_command() {
    for system in ["lt", "ltc", "lti", "ltdm"] {
        let out = run(&["scripts", "--system", system]);
        assert_eq!(code(&out), 0, "{system}: {}", stdout(&out));
        assert!(stdout(&out).contains("all ok"));
    }

    // A user-supplied script document, including a failing one.
    let dir = std::env::temp_dir();
    let good = dir.join("tdl-script-good.json");
    std::fs::write(
        &good,
        serde_json::to_string(&serde_json::json!({
            "type": "proof-script",
            "script": "script user-gp lt\nn1 ax : p => p\nn2 gp n1 : p => G P p\nqed n2\n",
        }))
        .unwrap(),
    )
    .unwrap();
    let out = run(&["scripts", "--file", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let bad = dir.join("tdl-script-bad.json");
    std::fs::write(
        &bad,
        serde_json::to_string(&serde_json::json!({
            "type": "proof-script",
            "script": "script user-bad lt\nn1 ax : p => p\nn2 gp n1 : p => G P p, q\nqed n2\n",
        }))
        .unwrap(),
    )
    .unwrap();
    let out = run(&["scripts", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("proof FAILED"));
}

#[test]
fn json_format_reports() {
    let out = run(&[
        "check",
        fixture("simple-six.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["tense_filters"], 2);

    let out = run(&[
        "simple",
        fixture("simple-six.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["simple"], true);
    assert_eq!(v["congruences"], 2);
}
