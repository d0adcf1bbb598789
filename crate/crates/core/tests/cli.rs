use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kerr-squeeze"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn fig1_csv_golden_rows() {
    let o = run(&["fig1", "--omega-count", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "omega,S,fourS,ratio,phase_convention");
    assert_eq!(lines.len(), 13);
    assert_eq!(
        lines[1],
        "0.00000000e0,1.39320225e-2,5.57280900e-2,0.00000000e0,per-omega"
    );
    assert!(lines[4].starts_with("0.00000000e0,1.09945055e-1,"));
    assert!(lines[7].starts_with("0.00000000e0,1.40227771e-1,"));
    assert!(lines[10].starts_with("0.00000000e0,1.67237470e-1,"));
    assert!(stderr(&o).contains("fig1: min S = 1.39320225e-2"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = run(&[
            "xpm-spectrum",
            "--ratio",
            "0,2.5",
            "--omega-count",
            "33",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).starts_with("xpm-spectrum: min S"));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    assert!(!x.contains(&b'\r'));
}

#[test]
fn dump_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "optimize-phase",
        "--ratio",
        "1,4",
        "--omega-count",
        "7",
        "--phase-convention",
        "fixed0",
        "--dump-config",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, stdout(&o)).unwrap();
    let again = run(&["--config", cfg.to_str().unwrap(), "--dump-config"]);
    assert_eq!(stdout(&again), stdout(&o));

    let direct = run(&[
        "optimize-phase",
        "--ratio",
        "1,4",
        "--omega-count",
        "7",
        "--phase-convention",
        "fixed0",
    ]);
    let from_file = run(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(direct.stdout, from_file.stdout);
    assert!(stdout(&direct).starts_with("omega,phi_opt,S_min,phi_oracle,S_oracle,ratio\n"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    std::fs::write(&cfg, "# base\nmode = spm-spectrum\nomega-count = 5\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "--omega-count", "9"]);
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn verify_operators_json_report() {
    let o = run(&[
        "verify-operators",
        "--bins",
        "3",
        "--cutoff",
        "8",
        "--gamma",
        "1e-3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = report.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert!(r["check"].is_string() && r["deviation"].is_number() && r["contract"].is_number());
        assert_eq!(r["pass"], true, "{r}");
    }
}

#[test]
fn failed_contract_exits_3() {
    // a cutoff this low discards a third of the coherent state
    let o = run(&[
        "verify-operators",
        "--bins",
        "2",
        "--cutoff",
        "3",
        "--gamma",
        "0.5",
        "--alpha",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"pass\": false"));
    assert!(stderr(&o).contains("discards"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["spm-spectrum", "--omega-count", "1", "--tau-r", "-1"],
        &["verify-operators", "--bins", "6", "--cutoff", "10"],
        &["fig1", "--psi0", "1"],
        &["--omega-count", "4"],
        &["fig1", "--no-such-flag"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains("error"), "{args:?}");
    }
    let o = run(&["spm-spectrum", "--omega-count", "1", "--tau-r", "-1"]);
    let err = stderr(&o);
    assert!(err.contains("tau-r") && err.contains("omega-count"));
}

#[test]
fn zero_phase_spm_is_shot_noise() {
    let o = run(&[
        "spm-spectrum",
        "--psi0",
        "0",
        "--omega-count",
        "5",
        "--format",
        "json",
    ]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in rows.as_array().unwrap() {
        assert_eq!(r["S"], 0.25);
        assert_eq!(r["fourS"], 1.0);
    }
}

#[test]
fn missing_config_file_is_reported() {
    let o = run(&[
        "--config",
        Path::new("/nonexistent/run.cfg").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
