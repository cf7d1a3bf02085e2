use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn icmspec(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_icmspec"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn temp(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn parse_echoes_canonical_form() {
    let r = icmspec(&["parse", &fixture("t_gate.icm")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("icm v1\nqubits 3\nio q1\n"));
    assert!(r.stdout.contains("measure q2 A ? q3 X : q3 Y"));
    let rec = icmspec(&["parse", &fixture("cnot.icm"), "--format", "records"]);
    assert_eq!(rec.stdout, "valid: true\nqubits: 2\ncnots: 1\nrules: 0\n");
}

#[test]
fn parse_reports_line_of_undeclared_qubit() {
    let r = icmspec(&["parse", &fixture("broken.icm")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 5"), "{}", r.stderr);
    assert!(r.stderr.contains("q3"));
}

#[test]
fn derive_spec_matches_checked_in_spec() {
    let dir = tempfile::tempdir().unwrap();
    let out = temp(&dir, "t.spec");
    let r = icmspec(&[
        "derive-spec",
        &fixture("t_gate.icm"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        std::fs::read_to_string(fixture("t.spec")).unwrap()
    );
    let stdout = icmspec(&["derive-spec", &fixture("cnot.icm")]);
    assert!(stdout
        .stdout
        .contains("+ XI -> XX\n+ IX -> IX\n+ ZI -> ZI\n+ IZ -> ZZ\n"));
}

#[test]
fn verify_exit_codes() {
    let spec = fixture("t.spec");
    assert_eq!(icmspec(&["verify", &fixture("t_gate.icm"), &spec]).code, 0);
    assert_eq!(
        icmspec(&["verify", &fixture("t_variant.icm"), &spec]).code,
        0
    );
    let bad = icmspec(&["verify", &fixture("t_mutated.icm"), &spec]);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.contains("criterion 2 (truth table): FAIL"));
    assert!(bad.stdout.contains("XII"));
    let rec = icmspec(&[
        "verify",
        &fixture("t_mutated.icm"),
        &spec,
        "--format",
        "records",
    ]);
    assert!(rec.stdout.contains("criterion2: fail\n") && rec.stdout.contains("overall: fail\n"));
    assert_eq!(icmspec(&["verify", &fixture("broken.icm"), &spec]).code, 2);
}

#[test]
fn spec_diff_compares_specs() {
    let dir = tempfile::tempdir().unwrap();
    let variant = temp(&dir, "variant.spec");
    icmspec(&[
        "derive-spec",
        &fixture("t_variant.icm"),
        "-o",
        variant.to_str().unwrap(),
    ]);
    assert_eq!(
        icmspec(&["spec-diff", &fixture("t.spec"), variant.to_str().unwrap()]).code,
        0
    );

    let swapped = temp(&dir, "swapped.spec");
    let text = std::fs::read_to_string(fixture("t.spec"))
        .unwrap()
        .replace("q3 X : q3 Y", "q3 Y : q3 X");
    std::fs::write(&swapped, text).unwrap();
    let r = icmspec(&[
        "spec-diff",
        &fixture("t.spec"),
        swapped.to_str().unwrap(),
        "--format",
        "records",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("rule_divergence: 0\n"));
}

#[test]
fn equiv_uses_the_oracle() {
    assert_eq!(
        icmspec(&["equiv", &fixture("t_gate.icm"), &fixture("t_variant.icm")]).code,
        0
    );
    let r = icmspec(&["equiv", &fixture("t_gate.icm"), &fixture("t_mutated.icm")]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("not equivalent"));
}

#[test]
fn equiv_refuses_oversized_circuits() {
    let dir = tempfile::tempdir().unwrap();
    let big = temp(&dir, "big.icm");
    let mut text = String::from("icm v1\nqubits 13\n");
    for k in 1..=13 {
        text.push_str(&format!("ancilla a{k} computational init Z\n"));
    }
    std::fs::write(&big, text).unwrap();
    let r = icmspec(&["equiv", big.to_str().unwrap(), big.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("cap"));
}

#[test]
fn transform_dual_and_demote() {
    let dir = tempfile::tempdir().unwrap();
    let meas = temp(&dir, "p_meas.icm");
    let gates = temp(&dir, "p.gates");
    std::fs::write(&gates, "gates v1\nqubits 1\np 1\n").unwrap();
    let c = icmspec(&[
        "compile",
        gates.to_str().unwrap(),
        "--flavour",
        "rotated-meas",
        "-o",
        meas.to_str().unwrap(),
    ]);
    assert_eq!(c.code, 0);
    let dual = icmspec(&["transform", meas.to_str().unwrap(), "--dual"]);
    assert_eq!(dual.code, 0);
    assert!(
        dual.stdout.contains("ancilla q2 teleport init Y") && dual.stdout.contains("measure q2 Z")
    );

    let demoted = icmspec(&["transform", meas.to_str().unwrap(), "--demote", "q2"]);
    assert_eq!(demoted.code, 0);
    assert!(
        demoted.stdout.contains("ancilla q3 teleport init Y")
            && demoted.stdout.contains("cnot q2 q3")
    );

    assert_eq!(
        icmspec(&["transform", &fixture("t_gate.icm"), "--dual"]).code,
        2
    );
    assert_eq!(
        icmspec(&["transform", &fixture("cnot.icm"), "--demote", "q1"]).code,
        2
    );
    assert_eq!(icmspec(&["transform", &fixture("cnot.icm")]).code, 2);
}

#[test]
fn compile_prints_frame_comments() {
    let r = icmspec(&["compile", &fixture("t.gates"), "--flavour", "rotated-init"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("measure q2 Z ? q3 X : q3 Z"));
    assert!(r.stdout.contains("# frame q1 z = m(q3)"));
    let raw = icmspec(&[
        "compile",
        &fixture("t.gates"),
        "--flavour",
        "rotated-init",
        "--uncorrected",
    ]);
    assert!(raw.stdout.contains("# frame uncorrected"));
    let mixed = icmspec(&[
        "compile",
        &fixture("mixed.gates"),
        "--flavour",
        "rotated-meas",
        "--format",
        "records",
    ]);
    assert!(mixed.stdout.contains("corrected: true\n"));
    assert_eq!(
        icmspec(&["compile", &fixture("t.gates"), "--flavour", "sideways"]).code,
        2
    );
}

#[test]
fn compiled_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = temp(&dir, "m.icm");
    icmspec(&[
        "compile",
        &fixture("mixed.gates"),
        "--flavour",
        "rotated-init",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(icmspec(&["parse", out.to_str().unwrap()]).code, 0);
}

#[test]
fn sample_verify_is_seeded() {
    let spec = fixture("t.spec");
    let ok = icmspec(&[
        "sample-verify",
        &fixture("t_variant.icm"),
        &spec,
        "--shots",
        "100",
        "--seed",
        "1",
    ]);
    assert_eq!(ok.code, 0);
    let a = icmspec(&[
        "sample-verify",
        &fixture("t_mutated.icm"),
        &spec,
        "--seed",
        "9",
    ]);
    let b = icmspec(&[
        "sample-verify",
        &fixture("t_mutated.icm"),
        &spec,
        "--seed",
        "9",
    ]);
    assert_eq!(a.code, 1);
    assert_eq!(a.stdout, b.stdout);
    let zero = icmspec(&[
        "sample-verify",
        &fixture("t_gate.icm"),
        &spec,
        "--shots",
        "0",
        "--format",
        "records",
    ]);
    assert_eq!(zero.code, 0);
    assert!(!zero.stdout.contains("warning: none"));
}
