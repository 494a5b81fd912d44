//! Runs a scenario file, writes its outputs, and reads the field dump back.
//!
//! ```text
//! cargo run --release --example run_scenario -- presets/fig5.cfg out/
//! ```

use std::path::PathBuf;

use eit_soliton::output::{read_field_binary, write_outputs};
use eit_soliton::scenario::OutputKind;
use eit_soliton::{load_scenario, run};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .ok_or("usage: run_scenario CONFIG [OUT_DIR]")?;
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."));
    let s = load_scenario(&config)?;
    let traj = run(&s, |state, m| {
        if m.n_peaks != 1 {
            eprintln!("z = {:.4e} m: {} peaks", state.z, m.n_peaks);
        }
    })?;
    for p in write_outputs(&traj, &s, &s.outputs, Some(&out))? {
        println!("wrote {}", p.display());
    }
    if let Some(spec) = s.outputs.iter().find(|o| o.kind == OutputKind::Snapshots) {
        let dump = read_field_binary(&out.join(&spec.path))?;
        println!(
            "field dump: {} snapshots of {} points, dz = {:.4e} m",
            dump.snapshots.len(),
            dump.nx,
            dump.dz_snapshot
        );
    }
    Ok(())
}
