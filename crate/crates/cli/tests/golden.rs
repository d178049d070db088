//! Golden-file checks: every subcommand, run with fixed inputs, must
//! reproduce its stored output byte for byte.  Floats are printed with
//! 12 significant digits, so these files pin the numerics as well as
//! the JSON shape.

use cli::run_args;
use std::path::PathBuf;
use std::process::Command;

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn check(name: &str, argv: &[&str]) {
    let mut full = vec!["jzlab"];
    full.extend_from_slice(argv);
    let out = run_args(full).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert_eq!(out, golden(name), "golden mismatch for {name}");
}

#[test]
fn jz_outputs_are_frozen() {
    check("jz-compose.json", &["jz", "compose", "--f", "th[1] t^2", "--g", "th[0]"]);
    check("jz-apply.json", &["jz", "apply", "--f", "th[0]^2 t^-1", "--lo", "-4", "--hi", "4"]);
    check(
        "jz-apply.csv",
        &["--format", "csv", "jz", "apply", "--f", "th[0]^2 t^-1", "--lo", "-4", "--hi", "4"],
    );
}

#[test]
fn folner_outputs_are_frozen() {
    check("folner-card.json", &["folner", "card", "--n", "3"]);
    check("folner-enumerate.json", &["folner", "enumerate", "--n", "1"]);
    check("folner-ratio.json", &["folner", "ratio", "--n", "2", "--f", "th[0]"]);
    check(
        "folner-ratio.csv",
        &["--format", "csv", "folner", "ratio", "--n", "2", "--f", "th[0]"],
    );
    check(
        "folner-ratio-left.json",
        &["folner", "ratio", "--n", "2", "--f", "t", "--side", "left"],
    );
    check("folner-bound.json", &["folner", "bound", "--n", "20", "--f", "th[0]"]);
    check("folner-growth.json", &["folner", "growth", "--radius", "6"]);
    check("folner-growth.csv", &["--format", "csv", "folner", "growth", "--radius", "3"]);
    check("folner-an-census.json", &["folner", "an-census", "--n", "2"]);
    check("folner-an-census.csv", &["--format", "csv", "folner", "an-census", "--n", "3"]);
    check("folner-klawe.json", &["folner", "klawe", "--j", "1"]);
    check("folner-klawe-neg.json", &["folner", "klawe", "--j", "-5"]);
}

#[test]
fn toeplitz_outputs_are_frozen() {
    check("toeplitz-certify.json", &["toeplitz", "certify"]);
    check(
        "toeplitz-certify-small.json",
        &["toeplitz", "certify", "--grid-cells", "65536"],
    );
    check("toeplitz-truncation.json", &["toeplitz", "truncation", "--lo", "1", "--hi", "8"]);
}

#[test]
fn state_outputs_are_frozen() {
    check("state-eval.json", &["state", "eval", "--expr", "a+[1]*a[2]"]);
    check(
        "state-eval-vacuum.json",
        &["state", "eval", "--expr", "x[1]*x[2]*x[3]*x[4]", "--covariance", "vacuum"],
    );
    check(
        "state-eval-full.json",
        &["state", "eval", "--expr", "a[2]*a+[2]", "--covariance", "full"],
    );
    check("state-average.json", &["state", "average", "--n", "1", "--expr", "a[1]*a+[2]"]);
    check(
        "state-average-skip.json",
        &["state", "average", "--n", "2", "--expr", "a+[1]*a[3]"],
    );
    check(
        "state-residual.json",
        &["state", "residual", "--n", "2", "--expr", "a[1]*a+[2]", "--k", "th[0]"],
    );
    check("state-witnesses.json", &["state", "witnesses"]);
}

#[test]
fn oracle_outputs_are_frozen() {
    check(
        "oracle-check.json",
        &["oracle", "check", "--window", "4", "--samples", "20", "--seed", "7"],
    );
    check("oracle-norm.json", &["oracle", "norm", "--n", "4"]);
}

#[test]
fn the_binary_matches_the_library_and_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_jzlab");

    let ok = Command::new(bin).args(["folner", "card", "--n", "3"]).output().unwrap();
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), golden("folner-card.json"));

    let capped = Command::new(bin).args(["folner", "enumerate", "--n", "4"]).output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8(capped.stderr).unwrap().contains("budget"));

    let invalid = Command::new(bin).args(["jz", "compose", "--f", "??"]).output().unwrap();
    assert_eq!(invalid.status.code(), Some(1));

    let unknown = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(1));

    let help = Command::new(bin).args(["--help"]).output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8(help.stdout).unwrap().contains("repro"));
}

#[test]
fn enumeration_progress_goes_to_stderr_and_data_to_stdout() {
    let bin = env!("CARGO_BIN_EXE_jzlab");
    let out = Command::new(bin)
        .args(["folner", "enumerate", "--n", "3", "--budget", "100000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("enumerated 10000 elements"), "progress on stderr");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&stdout).expect("stdout is pure JSON");
    assert_eq!(parsed["card"], serde_json::json!(80080));
}

#[test]
fn output_flag_writes_the_payload_to_a_file() {
    let bin = env!("CARGO_BIN_EXE_jzlab");
    let dir = std::env::temp_dir().join("jzlab-golden-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("card.json");
    let status = Command::new(bin)
        .args(["--output", path.to_str().unwrap(), "folner", "card", "--n", "3"])
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("folner-card.json"));
    std::fs::remove_dir_all(&dir).ok();
}
