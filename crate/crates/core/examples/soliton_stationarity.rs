//! A fundamental soliton in a uniformly coupled medium over ten nonlinear
//! lengths: shape and power should not move.

use eit_soliton::presets::UniformLayout;
use eit_soliton::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layout = UniformLayout {
        stride: 200,
        ..UniformLayout::default()
    };
    let s = layout.scenario()?;
    println!(
        "FWHM {:.4e} m, nonlinear length {:.4e} m, {} steps",
        layout.fwhm()?,
        layout.nonlinear_length()?,
        s.grid.nz
    );
    let traj = run(&s, |_, m| {
        println!(
            "z = {:.4e} m  peak = {:.6e} V/m  FWHM = {:.6e} m  power = {:.10e}",
            m.z,
            m.peak_amplitude,
            m.fwhm.unwrap_or(f64::NAN),
            m.power
        );
    })?;
    let (a, b) = (&traj.metrics[0], traj.metrics.last().unwrap());
    println!(
        "relative drift: peak {:.2e}, FWHM {:.2e}, power {:.2e}",
        b.peak_amplitude / a.peak_amplitude - 1.0,
        b.fwhm.unwrap() / a.fwhm.unwrap() - 1.0,
        b.power / a.power - 1.0
    );
    Ok(())
}
