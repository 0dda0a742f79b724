//! CLI contract tests: the JSON schema round-trip, output determinism across
//! parallelism degrees, exit codes, and the tangle text grammar.

use ospq::schema::{parse_diagram_text, scalar_from_json, scalar_to_json};
use ospq_core::cyclo::Cyc;
use ospq_core::rootdata::Params;
use serde_json::Value;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ospq"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ospq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn scalar_json_roundtrip() {
    let p = Params::new(1, 10);
    let samples = [
        p.q_pow(3) + Cyc::from_ratio(7, 3) * p.t_pow(5),
        Cyc::from_ratio(-22, 7),
        Cyc::zero(),
        p.zeta(1) * Cyc::from_ratio(1, 1 << 20),
    ];
    for s in &samples {
        let v = scalar_to_json(s, p.level());
        let back = scalar_from_json(&v, p.level()).unwrap();
        assert_eq!(&back, s);
    }
}

#[test]
fn invariant_roundtrip_through_emitted_json() {
    let input = write_temp(
        "unknot0.json",
        r#"{"n":1,"N":10,"link":{"strands":1,"braid":[],"framings":[0]},"colors":"all"}"#,
    );
    let out = bin()
        .args(["invariant", "-f", input.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let record: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["fieldLevel"], 40);
    assert_eq!(record["sigma"], 1);
    assert_eq!(record["components"], 1);
    // emitted value re-parses to an equal exact scalar
    let value = scalar_from_json(&record["value"], 40).unwrap();
    let re_emitted = scalar_to_json(&value, 40);
    assert_eq!(record["value"], re_emitted);
}

#[test]
fn determinism_across_parallelism() {
    let input = write_temp(
        "trefoil.json",
        r#"{"n":1,"N":10,"link":{"strands":2,"braid":[1,1,1],"framings":[3]},"colors":"all"}"#,
    );
    let strip_timestamp = |bytes: &[u8]| -> Value {
        let mut v: Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("generatedAt");
        v
    };
    let base = bin()
        .args(["invariant", "-f", input.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(base.status.code(), Some(0));
    for degree in ["2", "4"] {
        let out = bin()
            .args([
                "invariant",
                "-f",
                input.to_str().unwrap(),
                "--parallel",
                degree,
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(
            strip_timestamp(&base.stdout),
            strip_timestamp(&out.stdout),
            "output differs at parallelism {degree}"
        );
    }
}

#[test]
fn parse_and_semantic_exit_codes() {
    // malformed JSON: exit 2 with line/column in the message
    let bad = write_temp("bad.json", "{ not json");
    let out = bin()
        .args(["invariant", "-f", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    // framing-count mismatch: exit 3 with the counting diagnostic
    let mismatch = write_temp(
        "mismatch.json",
        r#"{"n":1,"N":10,"link":{"strands":2,"braid":[1,1],"framings":[0]},"colors":"all"}"#,
    );
    let out = bin()
        .args(["invariant", "-f", mismatch.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("framing count 1 != component count 2"));
    // conflicting flags and file parameters: exit 3
    let ok = write_temp(
        "ok.json",
        r#"{"n":1,"N":10,"link":{"strands":1,"braid":[],"framings":[0]},"colors":"all"}"#,
    );
    let out = bin()
        .args(["invariant", "-f", ok.to_str().unwrap(), "--N", "14"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // verify with an unknown suite: exit 3
    let out = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn explicit_colors_give_colored_invariant() {
    // unknot framing 0 coloured eps1: F = sdim_q(V) ~ -0.618
    let input = write_temp(
        "colored.json",
        r#"{"n":1,"N":10,"link":{"strands":1,"braid":[],"framings":[0]},"colors":[[1]]}"#,
    );
    let out = bin()
        .args(["invariant", "-f", input.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let record: Value = serde_json::from_slice(&out.stdout).unwrap();
    let re = record["approx"]["re"].as_f64().unwrap();
    assert!((re - (1.0 - 2.0 * (2.0 * std::f64::consts::PI / 10.0).cos())).abs() < 1e-9);
}

#[test]
fn tangle_grammar_parses_and_rejects() {
    let good = "components: 2\nframings: 0 1\nI+(0) Cup+(1)\nX+(0,1) I-(1)\nX+(1,0) I-(1)\nI+(0) Cap-(1)\n";
    let (diagram, colors) = parse_diagram_text(1, good).unwrap();
    assert_eq!(diagram.components, 2);
    assert_eq!(diagram.rows.len(), 4);
    assert_eq!(colors.len(), 2);
    // unknown token reported with position
    let bad = "components: 1\nI+(0) Y+(0)\n";
    let err = parse_diagram_text(1, bad).unwrap_err();
    assert_eq!((err.line, err.column), (2, 2));
    // signature mismatch caught by the evaluator path: exit 3 end-to-end
    let path = write_temp("bad_diagram.txt", "components: 1\nCup+(0)\nCap+(0)\n");
    let out = bin()
        .args([
            "tangle-eval",
            "-f",
            path.to_str().unwrap(),
            "--n",
            "1",
            "--N",
            "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tangle_eval_closed_diagram_scalar() {
    // 0-framed unknot coloured 2 eps1 at (1, 14): sdim(2 eps1), nonzero
    let path = write_temp(
        "unknot_cable.txt",
        "components: 1\nframings: 0\ncolors: 2\nCup+(0)\nCap-(0)\n",
    );
    let out = bin()
        .args([
            "tangle-eval",
            "-f",
            path.to_str().unwrap(),
            "--n",
            "1",
            "--N",
            "14",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let record: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["kind"], "scalar");
    let value = scalar_from_json(&record["value"], 56).unwrap();
    let expect =
        ospq_core::rootdata::sdim(Params::new(1, 14), &ospq_core::rootdata::Weight(vec![2]))
            .unwrap();
    assert_eq!(value, expect);
}
