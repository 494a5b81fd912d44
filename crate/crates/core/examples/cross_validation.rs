//! Crank-Nicolson against the split-step Fourier oracle, and the error
//! reduction from halving both dx and dz.

use num_complex::Complex64;

use eit_soliton::presets::UniformLayout;
use eit_soliton::propagator::relative_l2;
use eit_soliton::{run, split_step_oracle, ScenarioConfig};

fn final_field(s: &ScenarioConfig) -> Result<Vec<Complex64>, eit_soliton::Error> {
    Ok(run(s, |_, _| {})?.last().unwrap().envelope.clone())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = UniformLayout::default();
    let s = base.scenario()?;
    let ss = split_step_oracle(&s)?.last().unwrap().envelope.clone();
    println!(
        "CN vs split-step at nx = {}: {:.3e}",
        s.grid.nx,
        relative_l2(&final_field(&s)?, &ss)
    );

    let coarse = UniformLayout {
        nx: 513,
        steps_per_length: 50,
        ..base
    }
    .scenario()?;
    let mut reference = coarse.clone();
    reference.grid.nx = 8192;
    reference.grid.x_max = coarse.grid.x_min + coarse.grid.dx() / 8.0 * 8191.0;
    reference.grid.nz = coarse.grid.nz * 16;
    reference.grid.dz = coarse.grid.dz / 16.0;
    reference.solver.snapshot_stride = reference.grid.nz;
    let oracle = split_step_oracle(&reference)?
        .last()
        .unwrap()
        .envelope
        .clone();

    println!("{:>6} {:>8} {:>12} {:>8}", "nx", "steps", "error", "ratio");
    let mut previous: Option<f64> = None;
    for level in 0..3 {
        let refine = 1usize << level;
        let s = UniformLayout {
            nx: 512 * refine + 1,
            steps_per_length: 50 * refine,
            ..base
        }
        .scenario()?;
        let every = 8 / refine;
        let sampled: Vec<Complex64> = (0..s.grid.nx).map(|i| oracle[i * every]).collect();
        let err = relative_l2(&final_field(&s)?, &sampled);
        println!(
            "{:>6} {:>8} {:>12.4e} {:>8}",
            s.grid.nx,
            s.grid.nz,
            err,
            previous
                .map(|p| format!("{:.3}", p / err))
                .unwrap_or_default()
        );
        previous = Some(err);
    }
    Ok(())
}
