//! Writes the built-in figure scenarios as editable scenario files.
//!
//! ```text
//! cargo run --example export_presets -- [DIR]
//! ```

use std::path::PathBuf;

use eit_soliton::presets::scenario_preset;
use eit_soliton::render_scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("presets"));
    std::fs::create_dir_all(&dir)?;
    for name in ["fig3", "fig4", "fig5"] {
        let path = dir.join(format!("{name}.cfg"));
        std::fs::write(&path, render_scenario(&scenario_preset(name)?))?;
        println!("{}", path.display());
    }
    Ok(())
}
