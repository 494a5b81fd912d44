use std::f64::consts::PI;

use eit_soliton::diagnostics::{split_detected, turning_points};
use eit_soliton::presets::UniformLayout;
use eit_soliton::scenario::ProbeSource;
use eit_soliton::{run, SolitonOrder, Trajectory};

fn propagate(layout: UniformLayout, velocity: f64) -> Trajectory {
    let mut s = layout.scenario().unwrap();
    if let ProbeSource::Soliton(spec) = &mut s.probe {
        spec.transverse_velocity = velocity;
    }
    run(&s, |_, _| {}).unwrap()
}

fn layout(order: SolitonOrder, lengths: f64) -> UniformLayout {
    UniformLayout {
        order,
        nx: 1024,
        nonlinear_lengths: lengths,
        steps_per_length: 100,
        stride: 5,
        ..UniformLayout::default()
    }
}

#[test]
fn centred_fundamental_neither_splits_nor_turns() {
    let l = layout(SolitonOrder::Fundamental, 5.0);
    let traj = propagate(l, 0.0);
    let s = l.scenario().unwrap();
    assert_eq!(split_detected(&traj, &s.peaks), None);
    assert!(turning_points(&traj).is_empty());
    let dx = traj.dx;
    assert!(traj.metrics.iter().all(|m| m.centroid_x.abs() <= 0.5 * dx));
}

#[test]
fn breathing_second_order_does_not_count_as_a_split() {
    let l = layout(SolitonOrder::Second, 3.0 * PI);
    let traj = propagate(l, 0.0);
    assert_eq!(split_detected(&traj, &l.scenario().unwrap().peaks), None);
    let peaks: Vec<f64> = traj.metrics.iter().map(|m| m.peak_amplitude).collect();
    let (lo, hi) = peaks
        .iter()
        .fold((f64::MAX, 0.0f64), |(a, b), &p| (a.min(p), b.max(p)));
    assert!(hi / lo > 1.5, "breathing amplitude {lo} .. {hi}");
}

#[test]
fn tilted_soliton_drifts_ballistically() {
    let l = layout(SolitonOrder::Fundamental, 2.0);
    let drift = 2.0 * l.fwhm().unwrap();
    let velocity = drift / (2.0 * l.nonlinear_length().unwrap());
    let traj = propagate(l, velocity);
    assert!(turning_points(&traj).is_empty());
    let moved = traj.metrics.last().unwrap().centroid_x - traj.metrics[0].centroid_x;
    assert!(
        (moved / drift - 1.0).abs() < 1e-2,
        "moved {moved} vs {drift}"
    );
}
