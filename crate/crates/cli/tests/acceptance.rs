//! End-to-end checks of the binary: the built-in suite passes, JSON
//! output is byte-identical across identical invocations, and exit codes
//! follow the documented contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valueset"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let checks: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = checks.as_array().unwrap();
    assert_eq!(checks.len(), 9);
    for check in checks {
        assert_eq!(
            check["passed"], true,
            "{}: {}",
            check["name"], check["detail"]
        );
    }
    println!("PASS cli-selftest: 9 checks passed");
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let invocations: Vec<Vec<&str>> = vec![
        vec!["degree", "--field", "2^2", "--subfield", "2", "--format", "json", "x1^3"],
        vec!["verify", "--field", "2^2", "--format", "json", "x1^3"],
        vec![
            "sweep",
            "--field",
            "3^2",
            "--n",
            "1",
            "--mode",
            "random-polys",
            "--count",
            "25",
            "--seed",
            "9",
            "--format",
            "json",
        ],
        vec!["series", "--field", "2^3", "--subfield", "2", "--format", "json", "x1^3+x1"],
        vec!["example", "norm", "--q", "3", "--n", "2", "--format", "json"],
    ];
    for args in &invocations {
        let first = run(args);
        let second = run(args);
        assert!(first.status.success(), "{args:?}");
        assert!(!first.stdout.is_empty());
        assert_eq!(
            first.stdout, second.stdout,
            "non-deterministic output for {args:?}"
        );
    }
    println!(
        "PASS cli-deterministic-json: {} invocations byte-identical",
        invocations.len()
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    // Satisfied bound and inapplicable cases exit 0.
    assert_eq!(run(&["verify", "--field", "3^1", "x1", "x1*x2"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--field", "3^1", "x1"]).status.code(), Some(0));
    // Usage errors exit 1: bad grammar, bad flags, impossible requests.
    assert_eq!(run(&["verify", "--field", "3^1", "x1 + "]).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["degree", "--field", "6^1", "x1"]).status.code(), Some(1));
    assert_eq!(
        run(&["example", "one-missing", "--q", "2", "--n", "1"]).status.code(),
        Some(1)
    );
    // Help and version are not errors.
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    println!("PASS cli-exit-codes: contract holds");
}

#[test]
fn text_summaries_match_the_documented_examples() {
    let out = run(&["sweep", "--field", "3^1", "--n", "1", "--mode", "all-functions"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("27 maps, 0 violations"));

    let out = run(&["series", "--field", "5^1", "x1^2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("a_1 = 0"));
    assert!(text.contains("all_zero: true"));

    let out = run(&["degree", "--field", "2^2", "--subfield", "2", "x1^3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("deg_l: 2"));
    println!("PASS cli-text-summaries: documented lines reproduced");
}
