//! Integration of the paraxial probe equation along z on a transverse grid.
//!
//! Internally everything runs in the dimensionless system of
//! [`NormalizationUnits`]: `i u_ζ + u_ξξ + V u = 0` where `V` is either the
//! full susceptibility `k_p² L_a² χ(|E_p|, |E_c|)` or the cubic term
//! `−C_n L_a² E₀² |u|²`, plus `iσ(ξ)` from the absorbing sponge. SI units
//! appear only in [`FieldState`], [`Grid`] and [`Trajectory`].

mod split_step;

use std::path::Path;

use num_complex::Complex64;

use crate::diagnostics::{self, PeakSettings, SnapshotMetrics};
use crate::error::{Error, Result};
use crate::medium::{nonlinear_coefficient, validate_regime, ConditionReport, SusceptibilityModel};
use crate::scenario::{ProbeSource, ScenarioConfig};
use crate::soliton::{sech_fwhm_factor, soliton_profile};
use crate::tridiag;
use crate::units::{angular_frequency, NormalizationUnits};
use crate::waveguide::{CouplingBeam, Taper};

pub use split_step::split_step_oracle;

/// Uniform transverse grid and longitudinal stepping, SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub dz: f64,
    pub nz: usize,
}

impl Grid {
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.nx).map(|i| self.x_min + dx * i as f64).collect()
    }

    pub fn z_end(&self) -> f64 {
        self.dz * self.nz as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 16 {
            return Err(Error::domain(
                "nx",
                format!("need at least 16 points, got {}", self.nx),
            ));
        }
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::domain("x_max", "must exceed x_min"));
        }
        if !(self.dz.is_finite() && self.dz > 0.0) {
            return Err(Error::domain(
                "dz",
                format!("must be positive, got {}", self.dz),
            ));
        }
        Ok(())
    }
}

/// Probe envelope samples (V/m) at propagation distance `z` (m).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub z: f64,
    pub envelope: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    /// Full susceptibility evaluated pointwise from the local |E_p|, |E_c|.
    FullChi,
    /// Cubic NLSE with the local Kerr coefficient `C_n(E_c(x))`.
    CubicNlse,
}

/// Raised-cosine imaginary potential over the outer `fraction` of each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sponge {
    pub fraction: f64,
    /// Peak amplitude attenuation rate, m⁻¹ of propagation. `None` sizes it
    /// from the initial probe width.
    pub peak_rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub mode: SolverMode,
    pub sponge: Sponge,
    pub corrector_iterations: usize,
    pub snapshot_stride: usize,
    /// Run even when the initial condition violates the validity regime.
    pub regime_override: bool,
    /// Factor standing in for "≫" in the regime check.
    pub dominance: f64,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.corrector_iterations < 1 {
            return Err(Error::domain("corrector_iterations", "must be at least 1"));
        }
        if self.snapshot_stride < 1 {
            return Err(Error::domain("snapshot_stride", "must be at least 1"));
        }
        if !(0.0..=0.4).contains(&self.sponge.fraction) {
            return Err(Error::domain(
                "sponge_fraction",
                format!("must lie in [0, 0.4], got {}", self.sponge.fraction),
            ));
        }
        if let Some(r) = self.sponge.peak_rate {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::domain("sponge_rate", "must be non-negative"));
            }
        }
        if !(self.dominance > 1.0) {
            return Err(Error::domain("dominance", "must exceed 1"));
        }
        Ok(())
    }
}

/// Snapshots at every `snapshot_stride` steps (including z = 0) and their
/// metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub x_min: f64,
    pub dx: f64,
    pub nx: usize,
    /// Distance between consecutive snapshots, m.
    pub dz_snapshot: f64,
    pub snapshots: Vec<FieldState>,
    pub metrics: Vec<SnapshotMetrics>,
}

impl Trajectory {
    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx)
            .map(|i| self.x_min + self.dx * i as f64)
            .collect()
    }

    pub fn last(&self) -> Option<&FieldState> {
        self.snapshots.last()
    }
}

/// Reads a `re,im` per line profile (V/m).
pub fn read_profile(path: &Path, nx: usize) -> Result<Vec<Complex64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::with_capacity(nx);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse {
            line: i + 1,
            message: format!("{}: expected `re,im`, got `{line}`", path.display()),
        };
        let (re, im) = line.split_once(',').ok_or_else(bad)?;
        let re: f64 = re.trim().parse().map_err(|_| bad())?;
        let im: f64 = im.trim().parse().map_err(|_| bad())?;
        out.push(Complex64::new(re, im));
    }
    if out.len() != nx {
        return Err(Error::Config(format!(
            "{} holds {} samples but the grid has {nx} points",
            path.display(),
            out.len()
        )));
    }
    Ok(out)
}

/// Samples the scenario's probe on its grid at z = 0 without any regime check.
pub fn sample_probe(scenario: &ScenarioConfig) -> Result<FieldState> {
    scenario.validate()?;
    let grid = &scenario.grid;
    let xs = grid.xs();
    let envelope = match &scenario.probe {
        ProbeSource::Soliton(spec) => {
            let units = NormalizationUnits::derive(&scenario.atomic, scenario.lambda_p)?;
            let ec = scenario.beam.amplitude(spec.center_x, 0.0);
            let c_n =
                nonlinear_coefficient(&scenario.atomic, ec, angular_frequency(scenario.lambda_p))?;
            soliton_profile(spec, c_n, units.e0, units.k_p, &xs)?
        }
        ProbeSource::Profile(path) => read_profile(path, grid.nx)?,
    };
    if envelope.iter().any(|e| !e.is_finite()) {
        return Err(Error::Config(
            "initial profile contains non-finite samples".into(),
        ));
    }
    Ok(FieldState { z: 0.0, envelope })
}

/// Validity-regime report for the initial probe of a scenario.
pub fn regime_report(scenario: &ScenarioConfig, initial: &FieldState) -> ConditionReport {
    let (e_p_max, e_c_min) = regime_extremes(initial, &scenario.beam, &scenario.grid.xs());
    validate_regime(
        &scenario.atomic,
        e_p_max,
        e_c_min,
        scenario.solver.dominance,
    )
}

/// Samples the scenario's probe and checks the validity regime unless the
/// scenario overrides it.
pub fn initialize(scenario: &ScenarioConfig) -> Result<FieldState> {
    let state = sample_probe(scenario)?;
    if !scenario.solver.regime_override {
        let report = regime_report(scenario, &state);
        if !report.all_satisfied() {
            return Err(Error::Regime {
                failing: report.failing().map(|c| c.kind.to_string()).collect(),
            });
        }
    }
    Ok(state)
}

/// Strongest probe amplitude and weakest coupling amplitude over the probe's
/// half-maximum core.
pub fn regime_extremes(state: &FieldState, beam: &CouplingBeam, xs: &[f64]) -> (f64, f64) {
    let amp = diagnostics::amplitudes(&state.envelope);
    let peak = amp.iter().copied().fold(0.0, f64::max);
    let e_c_min = amp
        .iter()
        .zip(xs)
        .filter(|(a, _)| **a >= 0.5 * peak && peak > 0.0)
        .map(|(_, &x)| beam.amplitude(x, 0.0))
        .fold(f64::INFINITY, f64::min);
    let e_c_min = if e_c_min.is_finite() {
        e_c_min
    } else {
        beam.peak_amplitude
    };
    (peak, e_c_min)
}

/// The local potential `V(ξ, |u|², ζ)` of the dimensionless equation.
#[derive(Debug, Clone)]
pub(crate) struct Potential {
    mode: SolverMode,
    model: SusceptibilityModel,
    chi_scale: f64,
    e0_sq: f64,
    /// `|E_c(x, 0)|²`, (V/m)².
    coupling_sq: Vec<f64>,
    /// `C_n(E_c(x, 0)) L_a² E₀²`.
    cubic: Vec<f64>,
    taper: Taper,
    /// Sponge absorption rate per unit ζ.
    sponge: Vec<f64>,
}

impl Potential {
    fn new(
        scenario: &ScenarioConfig,
        units: &NormalizationUnits,
        initial: &[Complex64],
    ) -> Result<Self> {
        let grid = &scenario.grid;
        let xs = grid.xs();
        let coupling_sq: Vec<f64> = xs
            .iter()
            .map(|&x| scenario.beam.amplitude(x, 0.0).powi(2))
            .collect();

        let cubic = match scenario.solver.mode {
            SolverMode::CubicNlse => {
                let unit = nonlinear_coefficient(
                    &scenario.atomic,
                    1.0,
                    angular_frequency(scenario.lambda_p),
                )?;
                let scale = unit * units.la * units.la * units.e0 * units.e0;
                coupling_sq
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| {
                        if c > 0.0 {
                            Ok(scale / c)
                        } else {
                            Err(Error::domain(
                                "peak_amplitude",
                                format!("coupling amplitude underflows at x = {:e} m", xs[i]),
                            ))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            SolverMode::FullChi => Vec::new(),
        };

        let sponge = sponge_profile(scenario, units, initial);
        Ok(Potential {
            mode: scenario.solver.mode,
            model: SusceptibilityModel::new(&scenario.atomic),
            chi_scale: 1.0 / units.chi_unit(),
            e0_sq: units.e0 * units.e0,
            coupling_sq,
            cubic,
            taper: scenario.beam.taper,
            sponge,
        })
    }

    /// Potential at point `j` for dimensionless intensity `u_sq`, with the
    /// coupling taper evaluated at distance `z` (m).
    #[inline]
    fn at(&self, j: usize, u_sq: f64, taper_sq: f64) -> Result<Complex64> {
        let v = match self.mode {
            SolverMode::FullChi => {
                let chi = self
                    .model
                    .eval(u_sq * self.e0_sq, self.coupling_sq[j] * taper_sq)
                    .map_err(|e| Error::AtPoint {
                        x_index: j,
                        source: Box::new(e),
                    })?;
                chi * self.chi_scale
            }
            SolverMode::CubicNlse => Complex64::new(-self.cubic[j] / taper_sq * u_sq, 0.0),
        };
        Ok(v + Complex64::new(0.0, self.sponge[j]))
    }

    fn taper_sq(&self, z: f64) -> f64 {
        self.taper.factor(z).powi(2)
    }
}

fn sponge_profile(
    scenario: &ScenarioConfig,
    units: &NormalizationUnits,
    initial: &[Complex64],
) -> Vec<f64> {
    let grid = &scenario.grid;
    let n = grid.nx;
    let fraction = scenario.solver.sponge.fraction;
    let width_points = fraction * (n - 1) as f64;
    if width_points <= 0.0 {
        return vec![0.0; n];
    }
    let dxi = units.x_to_dimensionless(grid.dx());
    let peak = match scenario.solver.sponge.peak_rate {
        Some(rate) => rate * units.lb,
        None => {
            // Fast enough for the slowest probe-scale waves, smooth enough not
            // to reflect them.
            let state = FieldState {
                z: 0.0,
                envelope: initial.to_vec(),
            };
            let m = diagnostics::metrics(&state, 0.0, dxi, &PeakSettings::default());
            match m.fwhm {
                Some(w) if w > 0.0 => {
                    let kappa = sech_fwhm_factor() / w;
                    let sponge_width = width_points * dxi;
                    (4.0 * kappa * kappa).max(40.0 * kappa / sponge_width)
                }
                _ => 0.0,
            }
        }
    };
    (0..n)
        .map(|i| {
            let from_edge = (i as f64).min((n - 1 - i) as f64);
            if from_edge >= width_points {
                0.0
            } else {
                let s = 1.0 - from_edge / width_points;
                peak * 0.5 * (1.0 - (std::f64::consts::PI * s).cos())
            }
        })
        .collect()
}

/// Crank-Nicolson integrator with fixed-point correction of the
/// field-dependent potential.
pub struct Solver {
    units: NormalizationUnits,
    grid: Grid,
    potential: Potential,
    corrector_iterations: usize,
    snapshot_stride: usize,
    peaks: PeakSettings,
    dxi: f64,
    dzeta: f64,
    step: usize,
    // scratch
    lap: Vec<Complex64>,
    next: Vec<Complex64>,
    sub: Vec<Complex64>,
    diag: Vec<Complex64>,
    sup: Vec<Complex64>,
    pivots: Vec<Complex64>,
}

impl Solver {
    /// Builds a solver for `scenario`; `initial` (V/m) sizes the automatic
    /// sponge.
    pub fn new(scenario: &ScenarioConfig, initial: &FieldState) -> Result<Self> {
        scenario.validate()?;
        let grid = scenario.grid;
        if initial.envelope.len() != grid.nx {
            return Err(Error::Config(format!(
                "initial field has {} samples, grid has {}",
                initial.envelope.len(),
                grid.nx
            )));
        }
        let units = NormalizationUnits::derive(&scenario.atomic, scenario.lambda_p)?;
        let u0: Vec<Complex64> = initial.envelope.iter().map(|e| e / units.e0).collect();
        let potential = Potential::new(scenario, &units, &u0)?;
        let n = grid.nx;
        let dxi = units.x_to_dimensionless(grid.dx());
        let dzeta = units.z_to_dimensionless(grid.dz);
        let zero = Complex64::default();
        let off = Complex64::new(0.0, -0.5 * dzeta / (dxi * dxi));
        Ok(Solver {
            units,
            grid,
            potential,
            corrector_iterations: scenario.solver.corrector_iterations,
            snapshot_stride: scenario.solver.snapshot_stride,
            peaks: scenario.peaks,
            dxi,
            dzeta,
            step: 0,
            lap: vec![zero; n],
            next: vec![zero; n],
            sub: vec![off; n],
            diag: vec![zero; n],
            sup: vec![off; n],
            pivots: vec![zero; n],
        })
    }

    pub fn units(&self) -> &NormalizationUnits {
        &self.units
    }

    /// Sponge absorption rate per metre of propagation at each grid point.
    pub fn sponge_rates(&self) -> Vec<f64> {
        self.potential
            .sponge
            .iter()
            .map(|s| s / self.units.lb)
            .collect()
    }

    fn to_si(&self, z_zeta: f64, u: &[Complex64]) -> FieldState {
        FieldState {
            z: self.units.z_to_si(z_zeta),
            envelope: u.iter().map(|c| c * self.units.e0).collect(),
        }
    }

    /// Advances `u` (dimensionless) from `zeta` by one step in place.
    #[allow(clippy::needless_range_loop)]
    fn advance(&mut self, u: &mut [Complex64], zeta: f64) -> Result<()> {
        let n = u.len();
        let step = self.step + 1;
        let h = Complex64::new(0.0, 0.5 * self.dzeta);
        let inv_dx2 = 1.0 / (self.dxi * self.dxi);
        let z_mid = self.units.z_to_si(zeta + 0.5 * self.dzeta);
        let taper_sq = self.potential.taper_sq(z_mid);

        for j in 0..n {
            let left = if j > 0 {
                u[j - 1]
            } else {
                Complex64::default()
            };
            let right = if j + 1 < n {
                u[j + 1]
            } else {
                Complex64::default()
            };
            self.lap[j] = (left - 2.0 * u[j] + right) * inv_dx2;
        }

        self.next.copy_from_slice(u);
        for pass in 0..self.corrector_iterations {
            for j in 0..n {
                let mid = if pass == 0 {
                    u[j]
                } else {
                    0.5 * (u[j] + self.next[j])
                };
                let v = self.potential.at(j, mid.norm_sqr(), taper_sq)?;
                self.diag[j] = 1.0 - h * (v - 2.0 * inv_dx2);
                self.next[j] = u[j] + h * (self.lap[j] + v * u[j]);
            }
            tridiag::solve_in_place(
                &self.sub,
                &self.diag,
                &self.sup,
                &mut self.next,
                &mut self.pivots,
            )
            .map_err(|p| Error::ZeroPivot { row: p.row, step })?;
        }

        if self.next.iter().any(|c| !c.is_finite()) {
            return Err(Error::Divergence { step });
        }
        u.copy_from_slice(&self.next);
        self.step = step;
        Ok(())
    }

    /// One Crank-Nicolson step of `dz` from `state`.
    pub fn cn_step(&mut self, state: &FieldState) -> Result<FieldState> {
        let zeta = self.units.z_to_dimensionless(state.z);
        let mut u: Vec<Complex64> = state.envelope.iter().map(|e| e / self.units.e0).collect();
        self.advance(&mut u, zeta)?;
        let mut out = self.to_si(zeta + self.dzeta, &u);
        out.z = state.z + self.grid.dz;
        Ok(out)
    }

    /// Runs `nz` steps from `initial`, storing every `snapshot_stride`-th
    /// field and handing each stored snapshot to `on_snapshot`.
    pub fn run_from<F>(&mut self, initial: &FieldState, mut on_snapshot: F) -> Result<Trajectory>
    where
        F: FnMut(&FieldState, &SnapshotMetrics),
    {
        let dx = self.grid.dx();
        let mut traj = Trajectory {
            x_min: self.grid.x_min,
            dx,
            nx: self.grid.nx,
            dz_snapshot: self.grid.dz * self.snapshot_stride as f64,
            snapshots: Vec::new(),
            metrics: Vec::new(),
        };
        let record =
            |traj: &mut Trajectory, state: FieldState, cb: &mut F, peaks: &PeakSettings| {
                let m = diagnostics::metrics(&state, traj.x_min, traj.dx, peaks);
                cb(&state, &m);
                traj.snapshots.push(state);
                traj.metrics.push(m);
            };

        let mut u: Vec<Complex64> = initial.envelope.iter().map(|e| e / self.units.e0).collect();
        let zeta0 = self.units.z_to_dimensionless(initial.z);
        record(&mut traj, initial.clone(), &mut on_snapshot, &self.peaks);

        for k in 1..=self.grid.nz {
            let zeta = zeta0 + (k - 1) as f64 * self.dzeta;
            if let Err(e) = self.advance(&mut u, zeta) {
                let mut last = self.to_si(zeta, &u);
                last.z = initial.z + (k - 1) as f64 * self.grid.dz;
                return Err(Error::Propagation {
                    completed: k - 1,
                    source: Box::new(e),
                    last: Box::new(last),
                });
            }
            if k % self.snapshot_stride == 0 {
                let mut state = self.to_si(zeta + self.dzeta, &u);
                state.z = initial.z + k as f64 * self.grid.dz;
                record(&mut traj, state, &mut on_snapshot, &self.peaks);
            }
        }
        Ok(traj)
    }
}

/// One Crank-Nicolson step for a scenario, building a fresh solver.
pub fn cn_step(state: &FieldState, scenario: &ScenarioConfig) -> Result<FieldState> {
    Solver::new(scenario, state)?.cn_step(state)
}

/// Initializes and propagates the scenario over its full grid.
pub fn run<F>(scenario: &ScenarioConfig, on_snapshot: F) -> Result<Trajectory>
where
    F: FnMut(&FieldState, &SnapshotMetrics),
{
    let initial = initialize(scenario)?;
    Solver::new(scenario, &initial)?.run_from(&initial, on_snapshot)
}

/// Relative L2 distance `‖a − b‖/‖b‖` between two sampled fields.
pub fn relative_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::UniformLayout;
    use crate::soliton::SolitonOrder;

    fn uniform(nx: usize, lengths: f64, steps: usize) -> ScenarioConfig {
        UniformLayout {
            nx,
            nonlinear_lengths: lengths,
            steps_per_length: steps,
            stride: 1,
            ..UniformLayout::default()
        }
        .scenario()
        .unwrap()
    }

    fn gaussian(scenario: &ScenarioConfig, w0: f64, amplitude: f64, tilt: f64) -> FieldState {
        FieldState {
            z: 0.0,
            envelope: scenario
                .grid
                .xs()
                .iter()
                .map(|&x| Complex64::from_polar(amplitude * (-(x / w0).powi(2)).exp(), tilt * x))
                .collect(),
        }
    }

    #[test]
    fn free_diffraction_follows_gaussian_optics() {
        // Transparent medium and a probe far too weak for any nonlinearity.
        let mut s = uniform(2048, 1.0, 1);
        s.solver.mode = SolverMode::FullChi;
        let units = NormalizationUnits::derive(&s.atomic, s.lambda_p).unwrap();
        let half = s.grid.x_max;
        let w0 = half / 24.0;
        let w0_xi = units.x_to_dimensionless(w0);
        let z_r = units.z_to_si(0.25 * w0_xi * w0_xi);
        s.grid.nz = 2000;
        s.grid.dz = 5.0 * z_r / s.grid.nz as f64;
        s.solver.snapshot_stride = 400;
        let initial = gaussian(&s, w0, 1e-6 * units.e0, 0.0);
        let traj = Solver::new(&s, &initial)
            .unwrap()
            .run_from(&initial, |_, _| {})
            .unwrap();
        for m in &traj.metrics {
            let w = w0 * (1.0 + (m.z / z_r).powi(2)).sqrt();
            let expected = w * (4.0 * 2f64.ln()).sqrt();
            let got = m.fwhm.unwrap();
            assert!(
                (got / expected - 1.0).abs() < 5e-3,
                "z = {}: {got} vs {expected}",
                m.z
            );
        }
    }

    #[test]
    fn cubic_soliton_keeps_its_shape() {
        let s = uniform(512, 3.0, 100);
        let traj = run(&s, |_, _| {}).unwrap();
        let first = &traj.metrics[0];
        for m in &traj.metrics {
            assert!((m.peak_amplitude / first.peak_amplitude - 1.0).abs() < 1e-2);
            assert!((m.fwhm.unwrap() / first.fwhm.unwrap() - 1.0).abs() < 2e-2);
        }
    }

    #[test]
    fn lossless_steps_conserve_power() {
        let mut s = uniform(256, 2.0, 50);
        s.probe = ProbeSource::Soliton(crate::soliton::SolitonSpec {
            order: SolitonOrder::Second,
            ..match s.probe {
                ProbeSource::Soliton(spec) => spec,
                _ => unreachable!(),
            }
        });
        let traj = run(&s, |_, _| {}).unwrap();
        let norm = |st: &FieldState| st.envelope.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let n0 = norm(&traj.snapshots[0]);
        for st in &traj.snapshots {
            assert!((norm(st) / n0 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sponge_swallows_an_outgoing_beam() {
        let mut s = uniform(1024, 1.0, 1);
        s.solver.mode = SolverMode::FullChi;
        s.solver.sponge.fraction = 0.15;
        let units = NormalizationUnits::derive(&s.atomic, s.lambda_p).unwrap();
        let half = s.grid.x_max;
        let w0 = half / 8.0;
        // Drift speed carrying the beam well past the boundary.
        let tilt = 100.0 / half;
        let travel = 3.0 * half;
        let angle = tilt / units.k_p;
        s.grid.nz = 1500;
        s.grid.dz = travel / angle / s.grid.nz as f64;
        s.solver.snapshot_stride = 1500;
        s.solver.sponge.peak_rate = Some(20.0 * angle / (0.15 * half));
        let initial = gaussian(&s, w0, 1e-6 * units.e0, tilt);
        let traj = Solver::new(&s, &initial)
            .unwrap()
            .run_from(&initial, |_, _| {})
            .unwrap();
        let ratio = traj.metrics[1].power / traj.metrics[0].power;
        assert!(ratio < 1e-3, "remaining power fraction {ratio}");
    }

    #[test]
    fn sponge_rates_vanish_in_the_interior() {
        let mut s = uniform(200, 1.0, 10);
        s.solver.sponge = Sponge {
            fraction: 0.1,
            peak_rate: Some(5.0),
        };
        let initial = initialize(&s).unwrap();
        let rates = Solver::new(&s, &initial).unwrap().sponge_rates();
        assert!((rates[0] - 5.0).abs() < 1e-9 && (rates[199] - 5.0).abs() < 1e-9);
        assert!(rates[25..175].iter().all(|&r| r == 0.0));
        assert!(rates.windows(2).take(20).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn halving_dz_quarters_the_time_error() {
        let reference = {
            let s = uniform(256, 2.0, 800);
            split_step_oracle(&s)
                .unwrap()
                .last()
                .unwrap()
                .envelope
                .clone()
        };
        let spatial = {
            let s = uniform(256, 2.0, 800);
            run(&s, |_, _| {}).unwrap().last().unwrap().envelope.clone()
        };
        let err = |steps: usize| {
            let s = uniform(256, 2.0, steps);
            let u = run(&s, |_, _| {}).unwrap().last().unwrap().envelope.clone();
            relative_l2(&u, &spatial)
        };
        let ratio = err(10) / err(20);
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
        assert!(relative_l2(&spatial, &reference) < 2e-2);
    }

    #[test]
    fn regime_violation_blocks_unless_overridden() {
        let mut s = uniform(8192, 1.0, 10);
        if let ProbeSource::Soliton(spec) = &mut s.probe {
            spec.m = 0.5;
        }
        assert!(matches!(initialize(&s), Err(Error::Regime { .. })));
        s.solver.regime_override = true;
        assert!(initialize(&s).is_ok());
    }

    #[test]
    fn single_step_matches_first_step_of_run() {
        let s = uniform(128, 1.0, 20);
        let initial = initialize(&s).unwrap();
        let one = cn_step(&initial, &s).unwrap();
        let traj = run(&s, |_, _| {}).unwrap();
        assert_eq!(one, traj.snapshots[1]);
    }

    #[test]
    fn split_step_needs_power_of_two() {
        let s = uniform(300, 1.0, 10);
        assert!(matches!(split_step_oracle(&s), Err(Error::Config(_))));
    }

    #[test]
    fn initial_field_length_is_checked() {
        let s = uniform(128, 1.0, 10);
        let short = FieldState {
            z: 0.0,
            envelope: vec![Complex64::default(); 64],
        };
        assert!(matches!(Solver::new(&s, &short), Err(Error::Config(_))));
    }
}
