//! Validity-regime inequalities for each figure preset and for a probe
//! that is too strong.

use eit_soliton::presets::scenario_preset;
use eit_soliton::scenario::ProbeSource;
use eit_soliton::{regime_report, sample_probe};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["fig3", "fig4", "fig5"] {
        let s = scenario_preset(name)?;
        println!(
            "{name}{}",
            if s.solver.regime_override {
                " (runs with override)"
            } else {
                ""
            }
        );
        print!("{}", regime_report(&s, &sample_probe(&s)?));
    }

    let mut strong = scenario_preset("fig3")?;
    if let ProbeSource::Soliton(spec) = &mut strong.probe {
        spec.m *= 5.0;
    }
    println!("fig3 with a five times stronger probe");
    print!("{}", regime_report(&strong, &sample_probe(&strong)?));
    Ok(())
}
