//! End-to-end checks of the `nlsbench` command-line interface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn nlsbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlsbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmpfile(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("nlsbench-cli-{}-{name}", std::process::id()))
}

fn body_lines(path: &PathBuf) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.to_string())
        .collect()
}

#[test]
fn converge_writes_csv_with_orders() {
    let out = tmpfile("converge.csv");
    let result = nlsbench(&[
        "converge",
        "--dim", "1",
        "--n", "64",
        "--r", "3",
        "--mu", "1",
        "--T", "1",
        "--methods", "lowreg1d,strang",
        "--norm", "h1",
        "--taus", "0.25:2:3",
        "--seed", "7",
        "--reference", "cross:16",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));

    let lines = body_lines(&out);
    assert_eq!(lines[0], "method,tau,error,order_fit");
    assert_eq!(lines.len(), 1 + 2 * 3, "one row per method and step size");
    assert!(lines[1].starts_with("lowreg1d,0.25,"));
    assert!(lines.iter().skip(4).all(|l| l.starts_with("strang,")));

    let meta = std::fs::read_to_string(&out).unwrap();
    assert!(meta.lines().next().unwrap().starts_with("# nls-spectral v"));
    assert!(meta.contains("# seed") || meta.contains("seed"));
    std::fs::remove_file(&out).ok();
}

#[test]
fn converge_supports_analytic_plane_wave_reference() {
    let out = tmpfile("analytic.csv");
    let result = nlsbench(&[
        "converge",
        "--dim", "1",
        "--n", "32",
        "--mu", "1",
        "--T", "1",
        "--methods", "lowreg1d",
        "--norm", "l2",
        "--taus", "0.0625:2:5",
        "--reference", "analytic",
        "--plane-k", "2",
        "--plane-amp", "1.0",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("lowreg1d: fitted order"));
    std::fs::remove_file(&out).ok();
}

#[test]
fn conserve_writes_time_series() {
    let out = tmpfile("drift.csv");
    let result = nlsbench(&[
        "conserve",
        "--dim", "1",
        "--n", "64",
        "--r", "2",
        "--tau", "0.01",
        "--T", "1",
        "--method", "lowreg1d",
        "--stride", "10",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let lines = body_lines(&out);
    assert_eq!(lines[0], "t,energy,mass");
    assert_eq!(lines.len(), 1 + 11, "t = 0 plus every 10th of 100 steps");
    assert!(lines[1].starts_with("0,"));
    std::fs::remove_file(&out).ok();
}

#[test]
fn step_dumps_field_values() {
    let out = tmpfile("field.csv");
    let result = nlsbench(&[
        "step",
        "--dim", "1",
        "--n", "32",
        "--tau", "0.05",
        "--steps", "3",
        "--method", "lowregdd",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let lines = body_lines(&out);
    assert_eq!(lines[0], "index,re,im");
    assert_eq!(lines.len(), 1 + 32);
    std::fs::remove_file(&out).ok();
}

#[test]
fn oracle_check_reports_and_exits_zero() {
    let result = nlsbench(&["oracle-check", "--dim", "1", "--n", "16", "--seed", "1"]);
    assert!(result.status.success());
    let stdout = String::from_utf8_lossy(&result.stdout);
    for needle in ["j1:", "j2:", "kj[axis 0]:", "duhamel decomposition", "all within 1e-12"] {
        assert!(stdout.contains(needle), "missing `{needle}` in:\n{stdout}");
    }

    let result = nlsbench(&["oracle-check", "--dim", "2", "--n", "8", "--seed", "3"]);
    assert!(result.status.success());
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("kj[axis 1]:"));
}

#[test]
fn invalid_flags_produce_usage_error() {
    let result = nlsbench(&["converge", "--bogus"]);
    assert!(!result.status.success());
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.to_lowercase().contains("usage") || stderr.contains("--help"));
}

#[test]
fn infeasible_configs_name_the_violated_precondition() {
    // Odd resolution.
    let result = nlsbench(&[
        "converge", "--dim", "1", "--n", "63", "--methods", "lowreg1d",
        "--taus", "0.25:2:3", "--out", "/tmp/unused.csv",
    ]);
    assert!(!result.status.success());
    assert!(String::from_utf8_lossy(&result.stderr).contains("even"));

    // Analytic reference without plane-wave data.
    let result = nlsbench(&[
        "converge", "--dim", "1", "--n", "64", "--methods", "lowreg1d",
        "--taus", "0.25:2:3", "--reference", "analytic", "--out", "/tmp/unused.csv",
    ]);
    assert!(!result.status.success());
    assert!(String::from_utf8_lossy(&result.stderr).contains("plane-wave"));

    // Step size that does not divide the horizon.
    let result = nlsbench(&[
        "converge", "--dim", "1", "--n", "64", "--methods", "strang",
        "--taus", "0.3:2:2", "--out", "/tmp/unused.csv",
    ]);
    assert!(!result.status.success());
    assert!(String::from_utf8_lossy(&result.stderr).contains("integer multiple"));

    // 1D-only scheme on a 2D grid.
    let result = nlsbench(&[
        "converge", "--dim", "2", "--n", "8", "--methods", "lowreg1d",
        "--taus", "0.25:2:3", "--out", "/tmp/unused.csv",
    ]);
    assert!(!result.status.success());
    assert!(String::from_utf8_lossy(&result.stderr).contains("one-dimensional"));

    // Oracle cap.
    let result = nlsbench(&["oracle-check", "--dim", "1", "--n", "64"]);
    assert!(!result.status.success());
    assert!(String::from_utf8_lossy(&result.stderr).contains("capped"));
}
