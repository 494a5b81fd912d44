//! Strang-split Fourier integrator on a periodic copy of the grid.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{initialize, FieldState, Potential, Trajectory};
use crate::diagnostics;
use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;
use crate::units::NormalizationUnits;

/// Propagates the scenario with a second-order split-step Fourier scheme.
///
/// Uses the same potential, sponge and snapshot stride as the
/// Crank-Nicolson solver, but treats the domain as periodic with period
/// `nx·dx`. `nx` must be a power of two.
pub fn split_step_oracle(scenario: &ScenarioConfig) -> Result<Trajectory> {
    let grid = scenario.grid;
    if !grid.nx.is_power_of_two() {
        return Err(Error::Config(format!(
            "split-step oracle needs a power-of-two nx, got {}",
            grid.nx
        )));
    }
    let initial = initialize(scenario)?;
    let units = NormalizationUnits::derive(&scenario.atomic, scenario.lambda_p)?;
    let n = grid.nx;
    let mut u: Vec<Complex64> = initial.envelope.iter().map(|e| e / units.e0).collect();
    let potential = Potential::new(scenario, &units, &u)?;

    let dxi = units.x_to_dimensionless(grid.dx());
    let dzeta = units.z_to_dimensionless(grid.dz);
    let period = n as f64 * dxi;
    let dispersion: Vec<Complex64> = (0..n)
        .map(|j| {
            let j = if j <= n / 2 {
                j as f64
            } else {
                j as f64 - n as f64
            };
            let k = 2.0 * std::f64::consts::PI * j / period;
            Complex64::from_polar(1.0 / n as f64, -k * k * dzeta)
        })
        .collect();

    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);

    let stride = scenario.solver.snapshot_stride;
    let mut traj = Trajectory {
        x_min: grid.x_min,
        dx: grid.dx(),
        nx: n,
        dz_snapshot: grid.dz * stride as f64,
        snapshots: Vec::new(),
        metrics: Vec::new(),
    };
    let record = |traj: &mut Trajectory, state: FieldState| {
        let m = diagnostics::metrics(&state, traj.x_min, traj.dx, &scenario.peaks);
        traj.snapshots.push(state);
        traj.metrics.push(m);
    };
    record(&mut traj, initial);

    let half = 0.5 * dzeta;
    let nonlinear = |u: &mut [Complex64], z: f64| -> Result<()> {
        let taper_sq = potential.taper_sq(z);
        for (j, c) in u.iter_mut().enumerate() {
            let v0 = potential.at(j, c.norm_sqr(), taper_sq)?;
            let trial = *c * (Complex64::i() * v0 * half).exp();
            let mid = 0.5 * (c.norm_sqr() + trial.norm_sqr());
            let v = potential.at(j, mid, taper_sq)?;
            *c *= (Complex64::i() * v * half).exp();
        }
        Ok(())
    };

    for k in 1..=grid.nz {
        let z0 = (k - 1) as f64 * grid.dz;
        let step = (|| -> Result<()> {
            nonlinear(&mut u, z0 + 0.25 * grid.dz)?;
            fwd.process(&mut u);
            for (c, d) in u.iter_mut().zip(&dispersion) {
                *c *= d;
            }
            inv.process(&mut u);
            nonlinear(&mut u, z0 + 0.75 * grid.dz)?;
            if u.iter().any(|c| !c.is_finite()) {
                return Err(Error::Divergence { step: k });
            }
            Ok(())
        })();
        if let Err(e) = step {
            return Err(Error::Propagation {
                completed: k - 1,
                source: Box::new(e),
                last: Box::new(FieldState {
                    z: z0,
                    envelope: u.iter().map(|c| c * units.e0).collect(),
                }),
            });
        }
        if k % stride == 0 {
            record(
                &mut traj,
                FieldState {
                    z: k as f64 * grid.dz,
                    envelope: u.iter().map(|c| c * units.e0).collect(),
                },
            );
        }
    }
    Ok(traj)
}
