//! A second-order soliton launched slightly off the beam centre splits in
//! two; the fragment on the weak-coupling side narrows.
//!
//! ```text
//! cargo run --release --example fig3_splitting -- [OUT_DIR]
//! ```

use eit_soliton::diagnostics::{final_peak_motion, split_detected};
use eit_soliton::output::{write_outputs, write_sidecar, SIDECAR_NAME};
use eit_soliton::presets::scenario_preset;
use eit_soliton::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = scenario_preset("fig3")?;
    let traj = run(&s, |_, _| {})?;
    match split_detected(&traj, &s.peaks) {
        Some(z) => println!("split first seen at z = {z:.4e} m"),
        None => println!("no split"),
    }
    let last = traj.last().unwrap();
    println!("final snapshot at z = {:.4e} m:", last.z);
    for pm in final_peak_motion(&traj, &s.peaks, 10) {
        println!(
            "  peak at x = {:+.4e} m  amplitude {:.4e} V/m  FWHM {:.4e} m  drift dx/dz {:+.3e}  coupling {:.4e} V/m",
            pm.peak.x,
            pm.peak.amplitude,
            pm.peak.fwhm,
            pm.velocity,
            s.beam.amplitude(pm.peak.x, last.z)
        );
    }
    if let Some(dir) = std::env::args().nth(1).map(std::path::PathBuf::from) {
        for p in write_outputs(&traj, &s, &s.outputs, Some(&dir))? {
            println!("wrote {}", p.display());
        }
        write_sidecar(&s, &dir.join(SIDECAR_NAME))?;
    }
    Ok(())
}
