//! End-to-end tests of the `amn` binary: exit-code policy, output formats,
//! and spec-string handling.

use std::process::{Command, Output};

fn amn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amn"))
        .args(args)
        .output()
        .expect("spawn amn")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn bad_specs_and_points_exit_2() {
    let cases: &[&[&str]] = &[
        &["analyze", "zoo:sphere?dim=2"],
        &["analyze", "lp?dim=2&p=2"],
        &["analyze", "zoo:lp?field=R&dim=2&p=2&bogus=1"],
        &["analyze", "zoo:lp?field=R&dim=2&p=0.5"],
        &["norm", "eval", "zoo:lp?field=R&dim=2&p=2", "--point", "3"],
        &["norm", "eval", "zoo:lp?field=R&dim=2&p=2", "--point", "3,abc"],
        &["verify", "zoo:unknown?x=1"],
    ];
    for args in cases {
        let out = amn(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {:?}", out);
    }
}

#[test]
fn unknown_flags_exit_2() {
    let out = amn(&["analyze", "zoo:lp?field=R&dim=2&p=2", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn norm_eval_prints_value_envelope_gap() {
    let out = amn(&[
        "norm",
        "eval",
        "zoo:lp?field=R&dim=2&p=2",
        "--point",
        "3,4",
        "--n-max",
        "65536",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut value = None;
    let mut envelope = None;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("value ") {
            value = rest.parse::<f64>().ok();
        }
        if let Some(rest) = line.strip_prefix("upper_envelope ") {
            envelope = rest.parse::<f64>().ok();
        }
    }
    let value = value.expect("value line present");
    let envelope = envelope.expect("envelope line present");
    assert!((value - 5.0).abs() <= 1e-9, "value {value}");
    assert!(envelope >= value);
    assert!(text.lines().any(|l| l.starts_with("last_gap ")));
}

#[test]
fn convergence_csv_contract_on_warp() {
    let out = amn(&[
        "convergence",
        "zoo:warp?base=lp&p=2&dim=2&c=10",
        "--point",
        "1,0",
        "--n-max",
        "1024",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,a_n,a_n_over_n,upper_envelope"));
    let mut prev_ratio = f64::INFINITY;
    let mut rows = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 4);
        let (n, ratio) = (cols[0], cols[2]);
        // a_n/n decreases toward ‖x‖ = 1 with gap at most c/n
        assert!(ratio <= prev_ratio + 1e-12);
        assert!(ratio - 1.0 >= -1e-12);
        assert!(ratio - 1.0 <= 10.0 / n + 1e-12);
        prev_ratio = ratio;
        rows += 1;
    }
    assert_eq!(rows, 11, "schedule 1..1024 has 11 points");
}

#[test]
fn zoo_list_is_deterministic_and_documents_ground_truth() {
    let a = amn(&["zoo", "list"]);
    let b = amn(&["zoo", "list"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_of(&a);
    assert!(text
        .lines()
        .any(|l| l.contains("zoo:c-l1") && l.contains("delta0 = (4/pi)*sum|x_i|")));
}

#[test]
fn analyze_writes_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = amn(&[
        "analyze",
        "zoo:lp?field=R&dim=2&p=2",
        "--samples",
        "100",
        "--n-max",
        "4096",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = amn::report::report_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.space_label, "zoo:lp?field=R&dim=2&p=2");
    assert_eq!(report.verdict, amn::asymptote::Verdict::Normable);
}

#[test]
fn analyze_exits_0_on_hypotheses_violated_verdicts() {
    // "not normable" is a mathematical finding, not a tool failure
    let out = amn(&[
        "analyze",
        "zoo:quasi-lp?dim=2&p=0.5",
        "--samples",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = amn::report::report_from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.verdict, amn::asymptote::Verdict::HypothesesViolated);
}

#[test]
fn verify_names_the_failure_under_absurd_tolerances() {
    // With jitter the seminorm floor along the capped direction is genuinely
    // positive (the clean space collapses to an exact 0 there), so an E₀
    // threshold below that floor makes the direction undetectable; the
    // verify table must name the failing row and exit 1.
    let out = amn(&[
        "verify",
        "zoo:bounded-dir?dim=2&cap=1&jitter=0.25",
        "--tol-null",
        "1e-30",
        "--n-max",
        "4096",
        "--samples",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(
        text.lines().any(|l| l.starts_with("FAIL") && l.contains("e0-detection")),
        "expected a named e0-detection failure:\n{text}"
    );
}
