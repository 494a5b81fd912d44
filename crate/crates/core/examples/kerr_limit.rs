//! How well `χ⁽¹⁾ + χ⁽³⁾|E_p|²` reproduces the full susceptibility.
//!
//! The remainder falls as `|E_p|⁴`, the first neglected order.

use num_complex::Complex64;

use eit_soliton::presets::{field_unit, FigureLayout};
use eit_soliton::{kerr_expansion, susceptibility};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = FigureLayout::fig3().atomic();
    let e_c = Complex64::new(field_unit(), 0.0);
    let k = kerr_expansion(&params, e_c)?;
    println!("chi1 = {:.6e}", k.chi1);
    println!("chi3 = {:.6e} (V/m)^-2", k.chi3);
    println!("{:>10} {:>14} {:>8}", "E_p/E_c", "remainder", "slope");
    let mut previous: Option<(f64, f64)> = None;
    for i in 0..=8 {
        let ep = e_c.re * 10f64.powf(-4.0 + 0.25 * i as f64);
        let full = susceptibility(&params, Complex64::new(ep, 0.0), e_c)?;
        let rest = (full - k.chi1 - k.chi3 * ep * ep).norm();
        let slope = previous.map(|(e, r)| (rest / r).ln() / (ep / e).ln());
        println!(
            "{:>10.3e} {:>14.4e} {:>8}",
            ep / e_c.re,
            rest,
            slope.map(|s| format!("{s:.3}")).unwrap_or_default()
        );
        previous = Some((ep, rest));
    }
    Ok(())
}
