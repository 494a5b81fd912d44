//! Linear and Kerr susceptibility across a Gaussian coupling beam.
//!
//! The transparency window is widest where the coupling is strongest, so
//! Im χ⁽¹⁾ rises towards the wings while χ⁽³⁾ ∝ 1/|E_c|² grows there too.
//!
//! ```text
//! cargo run --example susceptibility_profile -- [fig3|fig4|fig5]
//! ```

use eit_soliton::presets::scenario_preset;
use eit_soliton::{derive_units, susceptibility_profile, TransverseProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "fig3".into());
    let s = scenario_preset(&name)?;
    let TransverseProfile::Gaussian { waist } = s.beam.profile else {
        return Err("preset has no Gaussian beam".into());
    };
    let units = derive_units(&s.atomic, s.lambda_p)?;
    let xs: Vec<f64> = (0..=12).map(|i| waist * (-3.0 + 0.5 * i as f64)).collect();
    let prof = susceptibility_profile(&s.atomic, &s.beam, &xs, 0.0)?.normalized(&units);
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "x/w", "Re chi1", "Im chi1", "Re chi3", "Im chi3"
    );
    for ((x, c1), c3) in xs.iter().zip(&prof.chi1).zip(&prof.chi3) {
        println!(
            "{:>8.2} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            x / waist,
            c1.re,
            c1.im,
            c3.re,
            c3.im
        );
    }
    Ok(())
}
