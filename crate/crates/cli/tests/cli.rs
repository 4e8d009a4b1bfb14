//! End-to-end tests of the binary: flag handling, exit codes, determinism,
//! and output formats.

use std::process::{Command, Output};

fn confspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn betti_closed_orientable_plain() {
    let out = confspace(&["betti", "--closed-orientable", "6", "-i", "43", "-k", "50"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "beta_43(B_50(Sigma_6)) = 66446126460 [series]"
    );
}

#[test]
fn betti_json_schema() {
    let out = confspace(&[
        "betti",
        "--closed-nonorientable",
        "1",
        "-i",
        "3",
        "-k",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["surface"]["kind"], "closed-nonorientable");
    assert_eq!(v["surface"]["h"], 1);
    assert_eq!(v["i"], 3);
    assert_eq!(v["k"], 3);
    assert_eq!(v["betti"], "1");
    assert_eq!(v["provenance"], "formula");
}

#[test]
fn malformed_flags_exit_2() {
    // no surface at all
    let out = confspace(&["betti", "-i", "1", "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // two surfaces at once
    let out = confspace(&[
        "betti",
        "--closed-orientable",
        "1",
        "--closed-nonorientable",
        "2",
        "-i",
        "1",
        "-k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // invariant violation: open surface without punctures
    let out = confspace(&["betti", "--open-orientable", "1", "0", "-i", "1", "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // nonorientable needs a crosscap
    let out = confspace(&["betti", "--closed-nonorientable", "0", "-i", "1", "-k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stable_table_small_plain() {
    let out = confspace(&[
        "stable-table",
        "--max-g",
        "0",
        "--max-i",
        "5",
        "--format",
        "plain",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n0\n0\n1\n0\n0\n");
}

#[test]
fn stable_table_genus_one_column() {
    let out = confspace(&[
        "stable-table",
        "--max-g",
        "1",
        "--max-i",
        "4",
        "--format",
        "plain",
    ]);
    assert!(out.status.success());
    // second column reads 1, 2, 3, 5, 7 down the rows
    let text = stdout(&out);
    let column: Vec<&str> = text
        .lines()
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(column, vec!["1", "2", "3", "5", "7"]);
}

#[test]
fn stable_table_output_is_deterministic() {
    let a = confspace(&["stable-table", "--max-g", "2", "--max-i", "10"]);
    let b = confspace(&["stable-table", "--max-g", "2", "--max-i", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn polys_genus_one_stable() {
    let out = confspace(&["polys", "-g", "1", "--family", "stable"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "odd  i >= 5: 2i-1\neven i >= 6: 2i-1\n");
}

#[test]
fn series_json_coefficients_are_exact_strings() {
    let out = confspace(&[
        "series", "--which", "pair", "-g", "0", "--n", "1", "--trunc", "4", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!(["1", "0", "0", "1", "0"]));
}

#[test]
fn dump_block_sphere() {
    let out = confspace(&[
        "dump-block",
        "--closed-orientable",
        "0",
        "-i",
        "2",
        "-k",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rendered"][0], "p*v");
    assert_eq!(v["differential"]["entries"][0][2], "1");
}

#[test]
fn verify_figures_exits_zero() {
    let out = confspace(&["verify", "figures"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn verify_over_cap_exits_2() {
    let out = confspace(&["verify", "oracle", "--max-g", "99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn block_cap_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_confspace"))
        .args([
            "dump-block",
            "--closed-orientable",
            "1",
            "-i",
            "3",
            "-k",
            "3",
        ])
        .env("CONFSPACE_MAX_BLOCK_DIM", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("above the cap"), "stderr: {err}");
}
