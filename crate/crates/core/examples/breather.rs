//! A doubled-amplitude soliton breathes with period `(π/4)·2k_p/κ²`.

use std::f64::consts::PI;

use eit_soliton::diagnostics::breathing_period;
use eit_soliton::presets::UniformLayout;
use eit_soliton::{run, split_step_oracle, SolitonOrder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layout = UniformLayout {
        order: SolitonOrder::Second,
        nonlinear_lengths: 2.0 * PI,
        stride: 5,
        ..UniformLayout::default()
    };
    let s = layout.scenario()?;
    let predicted = layout.breather_period()?;
    let cn = run(&s, |_, _| {})?;
    let ss = split_step_oracle(&s)?;
    println!("predicted period     {predicted:.6e} m");
    for (label, traj) in [("Crank-Nicolson", &cn), ("split-step", &ss)] {
        let p = breathing_period(traj).ok_or("no breathing detected")?;
        println!(
            "{label:<20} {p:.6e} m ({:+.3}%)",
            100.0 * (p / predicted - 1.0)
        );
    }
    let peaks: Vec<f64> = cn.metrics.iter().map(|m| m.peak_amplitude).collect();
    let (lo, hi) = peaks
        .iter()
        .fold((f64::MAX, 0.0f64), |(l, h), &p| (l.min(p), h.max(p)));
    println!("peak amplitude swings between {lo:.4e} and {hi:.4e} V/m");
    Ok(())
}
