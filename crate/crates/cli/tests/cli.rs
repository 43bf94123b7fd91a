//! End-to-end tests of the `nwhyp` binary: exit codes, report shape, data
//! output, and byte-level determinism.

// Golden values are frozen at the 17 significant digits the reports print.
#![allow(clippy::excessive_precision)]

use std::process::{Command, Output};

use approx::assert_abs_diff_eq;
use serde_json::Value;

fn nwhyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nwhyp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("nwhyp-cli-test-{}-{name}", std::process::id()))
}

#[test]
fn analyze_reports_constants_and_regime() {
    let out = nwhyp(&["analyze", "--c", "-2.2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["command"], "analyze");
    assert_eq!(r["status"], "ok");
    assert!(r["tool_version"].is_string());
    let res = &r["results"];
    assert_abs_diff_eq!(
        res["p_plus"].as_f64().unwrap(),
        2.0652475842498528,
        epsilon = 1e-15
    );
    assert_abs_diff_eq!(
        res["alpha"].as_f64().unwrap(),
        0.36708638731250631,
        epsilon = 1e-15
    );
    assert_eq!(res["regime"], "HardGap");
}

#[test]
fn analyze_rejects_parameters_above_minus_two() {
    let out = nwhyp(&["analyze", "--c", "-1.5"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("unsupported parameter"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn nw_emits_a_row_per_component() {
    let out = nwhyp(&["nw", "--c", "-2.2", "--depth", "12"]);
    assert_eq!(code(&out), 0);
    let rows = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .count();
    assert_eq!(rows, 8192);
}

#[test]
fn nw_prints_length_next_to_the_contraction_bound() {
    let out = nwhyp(&["nw", "--c", "-3", "--depth", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let headline = text.lines().next().unwrap();
    assert!(headline.contains("total_length="));
    assert!(headline.contains("length_bound="));
}

#[test]
fn nw_at_the_boundary_points_at_witness() {
    let out = nwhyp(&["nw", "--c", "-2"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("witness"));
}

#[test]
fn nw_writes_the_data_file_and_reports_it() {
    let path = temp_path("nw.json");
    let out = nwhyp(&[
        "nw",
        "--c",
        "-2.5",
        "--depth",
        "6",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "nw");
    assert_eq!(r["results"]["components"], 128);
    let data: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("data file written"))
            .expect("data file is JSON");
    assert_eq!(data["depth"], 6);
    assert_eq!(data["components"].as_array().unwrap().len(), 128);
    std::fs::remove_file(&path).ok();
}

#[test]
fn decode_finds_the_period_two_point() {
    let word: String = "01".repeat(20);
    let out = nwhyp(&["decode", "--c", "-2", "--word", &word]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let res = &r["results"];
    assert_abs_diff_eq!(
        res["point"].as_f64().unwrap(),
        (-1.0 - 5.0_f64.sqrt()) / 2.0,
        epsilon = 1e-8
    );
    assert!(res["converged"].as_bool().unwrap());
    assert!(res["width"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn decode_all_zeros_reaches_the_negative_fixed_point() {
    let word: String = "0".repeat(40);
    let out = nwhyp(&["decode", "--c", "-2.2", "--word", &word]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_abs_diff_eq!(
        r["results"]["point"].as_f64().unwrap(),
        -1.0652475842498528,
        epsilon = 1e-8
    );
}

#[test]
fn decode_rejects_bad_symbols() {
    let out = nwhyp(&["decode", "--c", "-2.2", "--word", "01x2"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("invalid symbol"));
}

#[test]
fn itinerary_flags_a_boundary_start() {
    let out = nwhyp(&[
        "itinerary",
        "--c",
        "-2.2",
        "--x",
        "0.36708638731250631",
        "--n",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["word"], "10111");
    assert_eq!(r["results"]["boundary_ambiguous"], true);
}

#[test]
fn itinerary_rejects_points_of_the_gap() {
    let out = nwhyp(&["itinerary", "--c", "-2.2", "--x", "0.1"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("escaped"));
}

#[test]
fn certify_gap_at_minus_three_verifies() {
    let out = nwhyp(&["certify", "--c", "-3", "--method", "gap"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    let certs = r["results"]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["method"], "gap");
    assert_eq!(certs[0]["status"], "verified");
    assert_abs_diff_eq!(
        certs[0]["lambda"].as_f64().unwrap(),
        1.6699992362489333,
        epsilon = 1e-12
    );
    assert!(certs[0]["falsification"].is_null());
}

#[test]
fn certify_gap_in_the_hard_regime_is_inapplicable() {
    let out = nwhyp(&["certify", "--c", "-2.2", "--method", "gap"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("wrong regime"));
}

#[test]
fn certify_all_in_the_hard_regime_runs_metric_and_weight() {
    let out = nwhyp(&["certify", "--c", "-2.2", "--method", "all"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    let certs = r["results"]["certificates"].as_array().unwrap();
    let methods: Vec<&str> = certs.iter().map(|c| c["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["metric", "weight"]);
    for cert in certs {
        assert_eq!(cert["status"], "verified");
        assert!(cert["lambda"].as_f64().unwrap() > 1.0);
    }
    assert_eq!(certs[1]["M"], 1);
    assert_abs_diff_eq!(
        certs[1]["lambda"].as_f64().unwrap(),
        1.2683181979009186,
        epsilon = 1e-12
    );
}

#[test]
fn certify_all_in_the_easy_regime_runs_three_methods() {
    let out = nwhyp(&["certify", "--c", "-3", "--method", "all"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let r = report(&out);
    let certs = r["results"]["certificates"].as_array().unwrap();
    let methods: Vec<&str> = certs.iter().map(|c| c["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["gap", "metric", "weight"]);
    assert!(certs.iter().all(|c| c["status"] == "verified"));
}

#[test]
fn certify_at_the_boundary_is_rejected_with_a_pointer() {
    let out = nwhyp(&["certify", "--c", "-2"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("witness"));
}

#[test]
fn witness_tabulates_the_flat_cocycle_against_four_powers() {
    let out = nwhyp(&["witness", "--c", "-2", "--n", "10"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let res = &r["results"];
    let zeros = res["zero_derivatives"].as_array().unwrap();
    assert_eq!(zeros.len(), 10);
    assert!(zeros.iter().all(|z| z.as_f64().unwrap() == 0.0));
    let expanding = res["expanding_derivatives"].as_array().unwrap();
    for (i, d) in expanding.iter().enumerate() {
        assert_eq!(d.as_f64().unwrap(), 4.0_f64.powi(i as i32 + 1));
    }
    assert_eq!(res["verdict"]["status"], "verified");
    assert_eq!(res["verdict"]["method"], "non-hyperbolic");
    assert_eq!(res["density"]["pass"], true);
}

#[test]
fn witness_away_from_the_boundary_is_rejected() {
    let out = nwhyp(&["witness", "--c", "-3"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("wrong regime"));
}

#[test]
fn plot_mu_spans_alpha_to_p_with_its_minimum_at_the_left_edge() {
    let out = nwhyp(&["plot", "--c", "-2.2", "--quantity", "mu", "--grid", "64"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split('\t');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows.len(), 64);
    assert_abs_diff_eq!(rows[0].0, 0.36708638731250631, epsilon = 1e-15);
    assert_abs_diff_eq!(rows[63].0, 2.0652475842498528, epsilon = 1e-15);
    let min = rows.iter().fold(f64::INFINITY, |acc, r| acc.min(r.1));
    assert_abs_diff_eq!(min, 1.2683181979009186, epsilon = 1e-12);
    assert_eq!(min, rows[0].1, "minimum sits at the left edge");
}

#[test]
fn plot_cantor_lists_the_components() {
    let out = nwhyp(&["plot", "--c", "-2.2", "--quantity", "cantor", "--depth", "3"]);
    assert_eq!(code(&out), 0);
    let rows = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .count();
    assert_eq!(rows, 16);
}

#[test]
fn text_format_flattens_the_report() {
    let out = nwhyp(&["analyze", "--c", "-2.2", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("command = analyze"));
    assert!(text.contains("results.regime = HardGap"));
}

#[test]
fn usage_errors_exit_two() {
    let out = nwhyp(&["certify", "--c", "-2.2", "--no-such-flag"]);
    assert_eq!(code(&out), 2);
    let out = nwhyp(&["no-such-command"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let cases: &[&[&str]] = &[
        &["certify", "--c", "-2.2", "--method", "all"],
        &["certify", "--c", "-3", "--method", "all"],
        &["witness", "--c", "-2"],
        &["analyze", "--c", "-2.7"],
        &["nw", "--c", "-2.2", "--depth", "8"],
        &["plot", "--c", "-2.5", "--quantity", "mu", "--grid", "32"],
    ];
    for case in cases {
        let mut with_threads_1 = vec!["--threads", "1"];
        with_threads_1.extend_from_slice(case);
        let mut with_threads_8 = vec!["--threads", "8"];
        with_threads_8.extend_from_slice(case);
        let a = nwhyp(case);
        let b = nwhyp(case);
        let c = nwhyp(&with_threads_1);
        let d = nwhyp(&with_threads_8);
        assert_eq!(code(&a), 0, "case {case:?} stderr: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "rerun differs for {case:?}");
        assert_eq!(a.stdout, c.stdout, "--threads 1 differs for {case:?}");
        assert_eq!(a.stdout, d.stdout, "--threads 8 differs for {case:?}");
    }
}
