//! With weak ground-state dephasing and a small one-photon detuning the
//! off-centre soliton is pulled back and oscillates about the beam centre.

use eit_soliton::diagnostics::turning_points;
use eit_soliton::presets::scenario_preset;
use eit_soliton::{run, TransverseProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = scenario_preset("fig5")?;
    let TransverseProfile::Gaussian { waist } = s.beam.profile else {
        unreachable!()
    };
    let traj = run(&s, |_, _| {})?;
    let m = &traj.metrics;
    for row in m.iter().step_by(m.len() / 30) {
        let col = ((row.centroid_x / waist + 0.5) * 60.0).clamp(0.0, 60.0) as usize;
        println!("{:>7.3} m |{}*", row.z, " ".repeat(col));
    }
    println!("turning points at z = {:.3?} m", turning_points(&traj));
    println!("power left: {:.3}", m.last().unwrap().power / m[0].power);
    Ok(())
}
