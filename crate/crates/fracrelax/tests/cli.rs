//! End-to-end checks of the `fracrelax` binary: subcommand plumbing,
//! deterministic output, error reporting, and the documented exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracrelax"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_single_point() {
    let out = run(&["eval", "--mu", "1", "--z", "-1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("z,value,regime,est_abs_error"), "{text}");
    assert!(text.contains("3.67879441171e-1"), "{text}");

    let out = run(&["eval", "--mu", "0.5", "--z", "-1"]);
    assert!(stdout(&out).contains("4.27583576156e-1"));

    let out = run(&["eval", "--mu", "0.8", "--nu", "0.8", "--z", "0"]);
    assert!(stdout(&out).contains("8.58937019225e-1"));
}

#[test]
fn eval_grid_and_usage_errors() {
    let out = run(&["eval", "--mu", "0.5", "--grid", "-5,0,11"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 12); // header + 11 rows

    // neither --z nor --grid
    let out = run(&["eval", "--mu", "0.5"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    // invalid order surfaces the library error with nonzero exit
    let out = run(&["eval", "--mu", "-1", "--z", "0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonPositiveOrder"));
}

#[test]
fn figure_outputs_are_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&["figure", "--id", "fig5", "--out-dir", dir.path().to_str().unwrap()]);
        assert!(out.status.success());
    }
    let a = std::fs::read(dir_a.path().join("fig5.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("fig5.csv")).unwrap();
    assert_eq!(a, b, "two runs must be byte-identical");

    let out = run(&["figure", "--id", "fig7", "--out-dir", dir_a.path().to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn relax_solves_to_csv() {
    let out = run(&[
        "relax", "--kind", "caputo", "--mu", "0.5", "--t-min", "1", "--t-max", "2", "--points", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,u");
    assert!(lines[1].starts_with("1.00000000000e0,4.27583576156e-1"), "{}", lines[1]);

    // hilfer requires --nu
    let out = run(&["relax", "--kind", "hilfer", "--mu", "0.5"]);
    assert!(!out.status.success());
}

fn write_model(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn model_report_fields_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write_model(
        dir.path(),
        "zener.json",
        r#"{"family": "zener", "m": 1.0, "a": [1.0], "b": [2.0], "nu": 1.0}"#,
    );
    let out = run(&["model-report", "--model", &ok]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("type: I"), "{text}");
    assert!(text.contains("Jg: 5.00000000000e-1"), "{text}");
    assert!(text.contains("max reciprocity residual"), "{text}");
    // tau_sigma = 1 < tau_eps = 2
    assert!(text.contains("coeff 1.00000000000e0  tau 1.00000000000e0"), "{text}");
    assert!(text.contains("coeff 5.00000000000e-1  tau 2.00000000000e0"), "{text}");

    let maxwell = write_model(
        dir.path(),
        "maxwell.json",
        r#"{"family": "maxwell", "a": [1.0], "b": [1.0]}"#,
    );
    let out = run(&["model-report", "--model", &maxwell]);
    assert!(stdout(&out).contains("type: II"));

    // violated Zener inequality: error message with nonzero exit
    let bad = write_model(
        dir.path(),
        "bad.json",
        r#"{"family": "zener", "m": 3.0, "a": [1.0], "b": [2.0]}"#,
    );
    let out = run(&["model-report", "--model", &bad]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidModelCoefficients"));
}

#[test]
fn respond_convolves_history() {
    let dir = tempfile::tempdir().unwrap();
    let model = write_model(
        dir.path(),
        "maxwell.json",
        r#"{"family": "maxwell", "a": [1.0], "b": [1.0]}"#,
    );
    // unit step of stress sampled on a log grid
    let mut csv = String::from("t,value\n");
    let n = 200;
    for i in 0..n {
        let t = 1e-4 * (10.0f64 / 1e-4).powf(i as f64 / (n - 1) as f64);
        csv.push_str(&format!("{t},1.0\n"));
    }
    let hist = dir.path().join("step.csv");
    std::fs::write(&hist, csv).unwrap();

    let out = run(&[
        "respond",
        "--model",
        &model,
        "--history",
        hist.to_str().unwrap(),
        "--mode",
        "stress-to-strain",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let mut cells = line.split(',');
        let t: f64 = cells.next().unwrap().parse().unwrap();
        let v: f64 = cells.next().unwrap().parse().unwrap();
        assert!((v - (1.0 + t)).abs() < 1e-4, "J(t) = 1 + t at {t}: {v}");
    }

    // malformed history rejected
    std::fs::write(&hist, "t,value\n1.0,abc\n").unwrap();
    let out = run(&[
        "respond",
        "--model",
        &model,
        "--history",
        hist.to_str().unwrap(),
        "--mode",
        "stress-to-strain",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("MalformedCsv"));
}
