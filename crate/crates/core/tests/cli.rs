use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_plankton-ns");
const EXAMPLE: [&str; 6] = ["--c", "1", "--beta", "4", "--r", "10/9"];

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn with_example(cmd: &str, extra: &[&str]) -> Output {
    let mut args = vec![cmd];
    args.extend(EXAMPLE);
    args.extend(extra);
    run(&args)
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn analyze_reports_critical_e2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("analyze.txt");
    let o = with_example("analyze", &["--theta", "4/9", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = read(&out);
    assert!(text.contains("E2 (0.5, 0.75) non-hyperbolic"), "{text}");
    let json: serde_json::Value = serde_json::from_str(&read(&dir.path().join("analyze.json"))).unwrap();
    assert_eq!(json["fixed_points"].as_array().unwrap().len(), 3);
    assert_eq!(json["existence_case"], "CaseI");
}

#[test]
fn analyze_attracting_and_trivial() {
    let o = with_example("analyze", &["--theta", "0.45"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("E2 ") && l.ends_with("attracting")), "{text}");

    let o = run(&["analyze", "--c", "1", "--beta", "4", "--r", "3", "--theta", "100"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("E0 (0, 0) repelling"));
    assert!(!text.contains("E2"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "c = 1\nbeta = 4\nr = 10/9\ntheta = 0.2\n").unwrap();
    let o = run(&["analyze", "--config", cfg.to_str().unwrap(), "--theta", "4/9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("non-hyperbolic"));
}

#[test]
fn ns_report_and_gate() {
    let o = with_example("ns", &["--search-min", "0.1", "--search-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("theta0 = 0.444444444444444"));
    assert!(text.contains("verdict: attracting invariant closed curve for θ*>0"));

    let o = with_example("ns", &["--search-min", "0.5", "--search-max", "0.9"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8(o.stderr).unwrap().contains("no critical theta found"));

    let o = with_example("ns", &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(run(&["analyze", "--c", "1"]).status.code(), Some(2));
    assert_eq!(with_example("analyze", &["--theta", "abc"]).status.code(), Some(2));
    assert_eq!(with_example("analyze", &["--theta", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let o = with_example("simulate", &["--theta", "0.45", "--initial-u", "1", "--initial-v", "0", "--n", "5", "--transient", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.csv");
    let o = with_example(
        "simulate",
        &["--theta", "0.45", "--initial-u", "1", "--initial-v", "0", "--n", "1", "--transient", "0", "--out", out.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read(&out), "step,u,v\n0,1,0\n");

    let esc = dir.path().join("esc.csv");
    let svg = dir.path().join("esc.svg");
    let o = with_example(
        "simulate",
        &["--theta", "0.45", "--initial-u", "5", "--initial-v", "5", "--transient", "0",
          "--out", esc.to_str().unwrap(), "--svg", svg.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read(&esc), "step,u,v\n0,5,5\n");
    assert!(String::from_utf8(o.stderr).unwrap().contains("escaped the box at step 1"));
    assert!(read(&svg).starts_with("<svg"));

    let o = with_example(
        "simulate",
        &["--theta", "0.45", "--initial-u", "1", "--initial-v", "0", "--out", "/nonexistent-dir/x.csv"],
    );
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn sweep_rows() {
    let o = with_example(
        "sweep",
        &["--theta-min", "0.40", "--theta-max", "0.46", "--theta-step", "0.01", "--initial-u", "0.6", "--initial-v", "0.75"],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,existence_case,u_star,v_star,stability,attractor_kind,tail_min_dist,tail_max_dist");
    assert_eq!(lines.len(), 8);
    assert!(lines[5].starts_with("0.44,") && lines[5].contains(",ClosedCurve,"));
    assert!(lines[6].starts_with("0.45,") && lines[6].contains(",ConvergedToPoint,"));

    let o = with_example(
        "sweep",
        &["--theta-min", "4/9", "--theta-max", "4/9", "--theta-step", "0.01", "--initial-u", "0.6", "--initial-v", "0.75", "--n", "100"],
    );
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains(",non-hyperbolic,"), "{text}");

    let o = with_example(
        "sweep",
        &["--theta-min", "3", "--theta-max", "3", "--theta-step", "0.1", "--initial-u", "0.6", "--initial-v", "0", "--n", "100"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().nth(1).unwrap(), "3,NoPositive,,,,,,");
}
