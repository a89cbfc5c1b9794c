//! End-to-end checks of the command-line surface: exit codes, report
//! shape, and the documented example queries.

use std::process::Command;

fn nqs(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nqs"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn nf_reduces_the_determinant_combination() {
    let out = nqs(&[
        "nf",
        "--algebra",
        "chart-sn-ext",
        "q^-1*(b13*b24 - b14*b23)",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), "r * r");
}

#[test]
fn nf_in_graded_and_twisted_contexts() {
    let out = nqs(&["nf", "--algebra", "dga-n", "d(b23*b24)"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("d(b23)") && stdout.contains("d(b24)"), "{}", stdout);

    let out = nqs(&["nf", "--algebra", "twisted-ai", "x23 ox r + q*x24 ox r"]);
    assert!(out.status.success());
}

#[test]
fn parse_errors_exit_with_code_two() {
    let out = nqs(&["nf", "--algebra", "chart-n", ""]);
    assert_eq!(out.status.code(), Some(2));
    let out = nqs(&["nf", "--algebra", "nonsense", "b23"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nqs(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suite_emits_json_and_passes() {
    let dir = std::env::temp_dir().join("nqs-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sheaf.json");
    let out = nqs(&[
        "verify",
        "--suite",
        "sheaf",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "sheaf");
    assert!(v["checks"].as_array().unwrap().len() >= 3);
    assert_eq!(v["summary"]["fail"], 0);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["name"].is_string());
        assert!(c["anchor"].is_string());
        assert!(c["status"] == "pass" || c["status"] == "fail");
        assert!(c["residual"].is_string());
    }
}

#[test]
fn reports_are_deterministic_up_to_wall_time() {
    let a = nqs(&["verify", "--suite", "hopf"]);
    let b = nqs(&["verify", "--suite", "hopf"]);
    let strip = |s: &[u8]| {
        String::from_utf8_lossy(s)
            .lines()
            .filter(|l| !l.contains(" ms)"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
}

#[test]
fn curvature_command_passes() {
    let out = nqs(&["curvature"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["matches_reference"], true);
    assert_eq!(v["anti_selfdual"], true);
}

#[test]
fn morphism_tables_print_and_check() {
    for name in ["Q", "Qtilde", "rhoN", "rhoS", "fSN", "fNS"] {
        let out = nqs(&["morphism", "--name", name]);
        assert!(out.status.success(), "morphism {}", name);
    }
    let out = nqs(&["morphism", "--name", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rule_budget_env_is_honored() {
    // a budget that admits the catalog constructions but not a reduction
    // needing 64 swaps
    let out = Command::new(env!("CARGO_BIN_EXE_nqs"))
        .env("NQS_RULE_BUDGET", "50")
        .args(["nf", "--algebra", "chart-n", "b24^8*b23^8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("budget"), "{}", err);
}
