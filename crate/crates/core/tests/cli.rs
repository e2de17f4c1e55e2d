//! Command-line behaviour: exit codes, output routing and golden files.

use std::path::PathBuf;
use std::process::Command;

use blockspin::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["blockspin"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

const GOLDEN: [(&str, &[&str]); 3] = [
    ("code_five_qubit.json", &["code", "--code", "five-qubit"]),
    (
        "flow_depolarizing.csv",
        &[
            "--format",
            "csv",
            "channel-flow",
            "--code",
            "five-qubit",
            "--depolarizing",
            "0.05",
        ],
    ),
    ("tiling_plus.svg", &["--format", "svg", "tiling", "--plus", "--L", "5"]),
];

#[test]
fn golden_outputs_are_stable() {
    for (file, args) in GOLDEN {
        let (c1, a, _) = run(args);
        let (c2, b, _) = run(args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b, "{file}");
        assert_eq!(a, golden(file), "{file}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_blockspin");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["code", "--code", "five-qubit"]), Some(0));
    assert_eq!(status(&["--help"]), Some(0));
    assert_eq!(status(&["code", "--code", "nope"]), Some(1));
    assert_eq!(status(&["frobnicate"]), Some(1));
    assert_eq!(status(&["threshold", "--lo", "0.2", "--hi", "0.3"]), Some(2));
    assert_eq!(status(&["logistic", "--r=-1", "--K", "1", "--dt", "1"]), Some(2));
}

#[test]
fn domain_errors_name_the_problem() {
    let (code, out, err) = run(&["memory-support", "--depolarizing", "0.3", "--epsilon", "1.5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error: "), "{err}");
    let (code, _, err) = run(&["toric", "--L", "4"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn json_carries_metadata() {
    let (code, out, _) = run(&["--seed", "9", "threshold"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let meta = &v["metadata"];
    assert_eq!(meta["seed"], 9);
    assert_eq!(meta["schema_version"], 1);
    assert_eq!(meta["command"], "threshold");
    assert!(meta["version"].is_string());
    let p = v["threshold"]["p_star"].as_f64().unwrap();
    assert!((p - 0.137725).abs() < 1e-6, "{p}");
}

#[test]
fn out_flag_writes_the_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let (code, out, _) = run(&[
        "--out",
        path.to_str().unwrap(),
        "--format",
        "csv",
        "logistic",
        "--r",
        "2.2",
        "--K",
        "1",
        "--dt",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("period-2"), "{out}");
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("# {"));
    assert!(body.lines().nth(1).unwrap().starts_with("n,"));
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["code", "--code", "steane", "--error", "XIIIIII"],
        &["decode", "--code", "five-qubit", "--op", "ZZXIX"],
        &["channel-flow", "--bit-flip", "0.2"],
        &["memory-support", "--depolarizing", "0.2", "--epsilon", "0.3"],
        &["classify", "--levels", "2", "--sparse", "X7"],
        &["tiling", "--brick", "--L", "10"],
        &["toric", "--L", "5", "--scan"],
        &["dfs", "--collective", "3"],
        &["logistic", "--r", "1", "--K", "1", "--dt", "0.1"],
    ];
    for args in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(!out.is_empty());
    }
}
