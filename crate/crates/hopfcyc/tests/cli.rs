//! End-to-end tests of the `hopfcyc` binary: output shape and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcyc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_builtin_diamond_passes_every_check() {
    let o = run(&["validate", "--model", "builtin:diamond"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for line in text.lines() {
        let f: Vec<&str> = line.split('\t').collect();
        assert_eq!(f.len(), 3, "{line}");
        assert_eq!(f[1], "PASS", "{line}");
    }
    for name in ["lie.jacobi", "group.gamma", "hopf.mpi", "hopf.sayd", "trace.sigma_trace", "cyclic.b_B"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{name}\t"))), "missing {name}");
    }
}

#[test]
fn check_selects_one_suite() {
    let o = run(&["validate", "--model", "builtin:diamond", "--check", "lie"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("lie.") || l.starts_with("mp.")));
}

#[test]
fn broken_jacobi_fails_at_lie_jacobi_with_exit_1() {
    let o = run(&["validate", "--model", &fixture("broken_jacobi.toml"), "--check", "lie"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("lie.jacobi\t")).expect("lie.jacobi line");
    assert!(line.contains("\tFAIL\t"), "{line}");
    assert!(line.contains("(0,1,2)"), "triple index reported: {line}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "name = \n[g1\n").unwrap();
    let o = run(&["validate", "--model", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty(), "no partial output on failure");
    let o = run(&["validate", "--model", &fixture("undeclared_name.toml")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"S\""));
    let o = run(&["cohomology", "--model", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_without_pipeline_is_validation_only() {
    let path = fixture("abelian_no_pipeline.toml");
    assert_eq!(run(&["validate", "--model", &path, "--check", "lie"]).status.code(), Some(0));
    let o = run(&["realize", "--model", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn cohomology_tables() {
    let o = run(&["cohomology", "--model", "builtin:diamond"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "betti\t1 1 0 1 1\nH0.1\t1\nH1.1\tθ1\nH3.1\tθ2∧θ3∧θ4\nH4.1\tθ1∧θ2∧θ3∧θ4\n");
    let o = run(&["cohomology", "--model", "builtin:abelian-plane"]);
    assert!(stdout(&o).starts_with("betti\t1 2 1\n"));
    let o = run(&["cohomology", "--model", "builtin:heisenberg"]);
    assert!(stdout(&o).starts_with("betti\t1 2 2 1\n"));
    let o = run(&["cohomology", "--model", "builtin:diamond", "--format", "latex"]);
    assert!(stdout(&o).contains("H3.1\t\\theta_{2}\\wedge \\theta_{3}\\wedge \\theta_{4}"));
}

#[test]
fn realize_reports_parity_and_components() {
    let o = run(&["realize", "--model", "builtin:diamond", "--class", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("parity\todd\n"), "{text}");
    // class 1: the trace pairing ∫ f₀ ∂f₁ on C¹
    assert!(text.contains("Phi[0,0]\tC^1\t"), "{text}");
    let o = run(&["realize", "--model", "builtin:diamond", "--class", "theta1"]);
    let text = stdout(&o);
    assert!(text.contains("parity\teven\n"), "{text}");
    assert!(text.contains("E[0,1]\t1*θ1\n"), "{text}");
    let o = run(&["realize", "--model", "builtin:diamond", "--class", "3:1"]);
    assert!(stdout(&o).starts_with("class\tθ2∧θ3∧θ4\n"));
}

#[test]
fn non_cocycle_exits_1_with_witness() {
    let o = run(&["realize", "--model", "builtin:diamond", "--class", "θ2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("θ1∧θ3"));
    let o = run(&["realize", "--model", "builtin:diamond", "--class", "θ5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["realize", "--model", "builtin:diamond", "--format", "expr"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["validate", "--model", "builtin:diamond", "--check", "group"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn realize_matches_the_frozen_golden_file() {
    let o = run(&["realize", "--model", "builtin:diamond", "--format", "expr"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("../golden/diamond_theta234.expr");
    let d = hopfcyc::golden::diff_realization(golden, &stdout(&o)).unwrap();
    assert!(d.is_empty(), "{d:#?}");
}
