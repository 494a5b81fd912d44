use std::path::Path;

use eit_soliton::output::{read_field_binary, write_outputs, CHI_HEADER, METRICS_HEADER};
use eit_soliton::presets::{scenario_preset, UniformLayout};
use eit_soliton::scenario::{OutputKind, OutputSpec};
use eit_soliton::{load_scenario, parse_scenario, render_scenario, run};

#[test]
fn shipped_preset_files_match_presets() {
    for name in ["fig3", "fig4", "fig5"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("presets")
            .join(format!("{name}.cfg"));
        assert_eq!(
            load_scenario(&path).unwrap(),
            scenario_preset(name).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn rendered_scenario_is_stable() {
    let s = scenario_preset("fig4").unwrap();
    let text = render_scenario(&s);
    assert_eq!(render_scenario(&parse_scenario(&text).unwrap()), text);
}

#[test]
fn no_outputs_means_no_files() {
    let dir = tempfile::tempdir().unwrap();
    let s = UniformLayout {
        nx: 128,
        nonlinear_lengths: 0.5,
        steps_per_length: 20,
        ..UniformLayout::default()
    }
    .scenario()
    .unwrap();
    let traj = run(&s, |_, _| {}).unwrap();
    assert!(write_outputs(&traj, &s, &[], Some(dir.path()))
        .unwrap()
        .is_empty());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn every_output_kind_is_written_and_readable() {
    let dir = tempfile::tempdir().unwrap();
    let s = UniformLayout {
        nx: 128,
        nonlinear_lengths: 0.5,
        steps_per_length: 20,
        stride: 5,
        ..UniformLayout::default()
    }
    .scenario()
    .unwrap();
    let traj = run(&s, |_, _| {}).unwrap();
    let outputs = [
        OutputSpec {
            kind: OutputKind::Metrics,
            path: "a/metrics.csv".into(),
        },
        OutputSpec {
            kind: OutputKind::Snapshots,
            path: "field.bin".into(),
        },
        OutputSpec {
            kind: OutputKind::ChiProfile,
            path: "chi.csv".into(),
        },
    ];
    let written = write_outputs(&traj, &s, &outputs, Some(dir.path())).unwrap();
    assert_eq!(written.len(), 3);

    let metrics = std::fs::read_to_string(dir.path().join("a/metrics.csv")).unwrap();
    assert_eq!(metrics.lines().next(), Some(METRICS_HEADER));
    assert_eq!(metrics.lines().count(), traj.metrics.len() + 1);

    let dump = read_field_binary(&dir.path().join("field.bin")).unwrap();
    assert_eq!(dump.states(), traj.snapshots);

    let chi = std::fs::read_to_string(dir.path().join("chi.csv")).unwrap();
    assert_eq!(chi.lines().next(), Some(CHI_HEADER));
    assert_eq!(chi.lines().count(), s.grid.nx + 1);
}
