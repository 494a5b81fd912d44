use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use eit_soliton::presets::{scenario_preset, UniformLayout};
use eit_soliton::scenario::ProbeSource;
use eit_soliton::{load_scenario, render_scenario};

fn eitsol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eitsol"))
        .args(args)
        .output()
        .unwrap()
}

fn preset_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("presets")
        .join(format!("{name}.cfg"))
}

fn small_scenario(dir: &Path, nx: usize, m_scale: f64) -> PathBuf {
    let mut s = UniformLayout {
        nx,
        nonlinear_lengths: 1.0,
        steps_per_length: 40,
        ..UniformLayout::default()
    }
    .scenario()
    .unwrap();
    if let ProbeSource::Soliton(spec) = &mut s.probe {
        spec.m *= m_scale;
    }
    let path = dir.join("small.cfg");
    std::fs::write(&path, render_scenario(&s)).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_preset_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = eitsol(&["run", "--preset", "fig3", "--out", out.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let mut names: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["field.bin", "metrics.csv", "scenario.cfg"]);

    let sidecar = load_scenario(&out.join("scenario.cfg")).unwrap();
    assert_eq!(sidecar, scenario_preset("fig3").unwrap());

    let csv = std::fs::read_to_string(out.join("metrics.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    assert_eq!(last.rsplit(',').next(), Some("2"));
}

#[test]
fn run_from_file_and_oracle_agree_on_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_scenario(dir.path(), 256, 1.0);
    for cmd in ["run", "oracle"] {
        let out = dir.path().join(cmd);
        let o = eitsol(&[cmd, cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{cmd}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(out.join("metrics.csv").is_file());
        assert!(out.join("scenario.cfg").is_file());
    }
}

#[test]
fn regime_violation_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_scenario(dir.path(), 2048, 20.0);
    let o = eitsol(&[
        "run",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("validity regime"));
    let o = eitsol(&["validate", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn probe_as_strong_as_coupling_fails_the_eit_condition() {
    let dir = tempfile::tempdir().unwrap();
    // E_p = E_c: the default probe is a hundredth of the coupling.
    let cfg = small_scenario(dir.path(), 4097, 100.0);
    let o = eitsol(&["validate", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    let line = report
        .lines()
        .find(|l| l.contains("EIT condition"))
        .unwrap();
    assert!(line.contains("[!!]"), "{report}");
}

#[test]
fn validate_reports_each_condition() {
    let o = eitsol(&["validate", preset_file("fig3").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.contains("[ok]")).count(),
        4,
        "{text}"
    );

    let o = eitsol(&["validate", preset_file("fig5").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[!!]"));
}

#[test]
fn estimate_prints_report_and_accepts_overrides() {
    let o = eitsol(&["estimate"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.0592 mm"), "{}", stdout(&o));

    let o = eitsol(&["estimate", "--ratio", "0.005"]);
    assert!(stdout(&o).contains("0.1183 mm"), "{}", stdout(&o));

    let o = eitsol(&["estimate", "--re-gamma4", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn chi_scan_tabulates_requested_points() {
    let o = eitsol(&[
        "chi-scan",
        preset_file("fig3").to_str().unwrap(),
        "--xs",
        "-1e-3:1e-3:11",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "x,re_chi1,im_chi1,re_chi3,im_chi3");
    assert!(lines[6].starts_with("0.00000000e0,"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["frobnicate"],
        vec!["run"],
        vec!["run", "--preset", "fig9"],
        vec!["run", "--preset", "estimate"],
        vec!["validate", "/nonexistent/scenario.cfg"],
        vec!["chi-scan", "/nonexistent.cfg", "--xs", "0:1:5"],
    ] {
        assert_eq!(eitsol(&args).status.code(), Some(2), "{args:?}");
    }
    let o = eitsol(&[
        "chi-scan",
        preset_file("fig3").to_str().unwrap(),
        "--xs",
        "1:0:5",
    ]);
    assert_eq!(o.status.code(), Some(2));
}
