//! A soliton launched two widths off centre drifts into the wing of the
//! coupling beam, where linear absorption takes it while it narrows.

use eit_soliton::presets::scenario_preset;
use eit_soliton::{run, TransverseProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = scenario_preset("fig4")?;
    let TransverseProfile::Gaussian { waist } = s.beam.profile else {
        unreachable!()
    };
    let traj = run(&s, |_, _| {})?;
    let m = &traj.metrics;
    let (p0, w0) = (m[0].power, m[0].fwhm.unwrap());
    println!(
        "{:>10} {:>12} {:>10} {:>10}",
        "z (m)", "centroid/w", "P/P0", "FWHM/F0"
    );
    for row in m.iter().step_by(m.len() / 20).chain(m.last()) {
        println!(
            "{:>10.4} {:>12.4} {:>10.4} {:>10.4}",
            row.z,
            row.centroid_x / waist,
            row.power / p0,
            row.fwhm.unwrap_or(f64::NAN) / w0
        );
    }
    Ok(())
}
