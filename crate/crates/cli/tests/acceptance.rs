//! Acceptance suite: every criterion of the build, one test each, printing a
//! pass/fail line per criterion.  All identities are exact (cyclotomic
//! equality); tolerances appear only in display-embedding checks where the
//! stated contract is display precision.
//!
//! Run with `cargo test -p ospq --test acceptance -- --nocapture`.

use ospq_core::verify::run_suite;
use std::process::Command;

fn criterion(number: u32, suite: &str) {
    let checks = run_suite(suite).unwrap_or_else(|| panic!("unknown suite {suite}"));
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {:>2} [{}]: {} ({} identities)",
        number,
        suite,
        status,
        checks.len()
    );
    for c in &failed {
        println!("    FAILED: {} — {}", c.name, c.detail);
    }
    assert!(
        failed.is_empty(),
        "criterion {number} ({suite}) has failures"
    );
}

#[test]
fn criterion_01_r_matrix_cubic_relation() {
    criterion(1, "rmatrix-cubic");
}

#[test]
fn criterion_02_dual_construction_agreement() {
    criterion(2, "rmatrix-dual");
}

#[test]
fn criterion_03_bwm_relation_suite() {
    criterion(3, "bwm");
}

#[test]
fn criterion_04_partial_trace_scalar() {
    criterion(4, "trace");
}

#[test]
fn criterion_05_superdimension_chain() {
    criterion(5, "sdim");
}

#[test]
fn criterion_06_axiom_v_both_routes() {
    criterion(6, "axiom-v");
}

#[test]
fn criterion_07_z_closed_form() {
    criterion(7, "zconst");
}

#[test]
fn criterion_08_q_squared_sum() {
    criterion(8, "qsum");
}

#[test]
fn criterion_09_gaussian_sum_closed_forms() {
    criterion(9, "gauss");
}

#[test]
fn criterion_10_invariant_fixtures() {
    criterion(10, "fixtures");
}

#[test]
fn criterion_11_kirby_invariance() {
    criterion(11, "kirby");
}

#[test]
fn criterion_12_obstruction_and_exit_code() {
    criterion(12, "obstruction");
    // the CLI half: `invariant` at (1, 8) must exit with code 4
    let dir = tempdir();
    let input = dir.join("unknot8.json");
    std::fs::write(
        &input,
        r#"{"n":1,"N":8,"link":{"strands":1,"braid":[],"framings":[0]},"colors":"all"}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ospq"))
        .args(["invariant", "-f", input.to_str().unwrap()])
        .output()
        .unwrap();
    println!(
        "criterion 12 [cli exit code]: {} (exit = {:?})",
        if out.status.code() == Some(4) {
            "PASS"
        } else {
            "FAIL"
        },
        out.status.code()
    );
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("not a pseudo-modular Hopf algebra"),
        "diagnostic should cite the obstruction"
    );
}

#[test]
fn criterion_13_oracle_identity() {
    criterion(13, "oracle");
}

#[test]
fn criterion_14_phi_recursion_vs_closed_form() {
    criterion(14, "phi");
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ospq-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
