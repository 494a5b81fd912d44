//! Width, amplitude bound and photon flux of a weak-light soliton.
//!
//! ```text
//! cargo run --example estimate -- [RATIO]
//! ```
//! `RATIO` is `E_p,max / E_c` (default 0.01).

use eit_soliton::presets::{estimate, EstimateInputs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut inputs = EstimateInputs::default();
    if let Some(r) = std::env::args().nth(1) {
        inputs.amplitude_ratio = r.parse()?;
    }
    let report = estimate(&inputs)?;
    println!("{report}");
    println!();
    println!("halving the ratio doubles the width:");
    for k in 0..4 {
        let ratio = inputs.amplitude_ratio / f64::from(1 << k);
        let r = estimate(&EstimateInputs {
            amplitude_ratio: ratio,
            ..inputs
        })?;
        println!("  E_p/E_c = {ratio:.5}  FWHM = {:.4} mm", r.fwhm * 1e3);
    }
    Ok(())
}
