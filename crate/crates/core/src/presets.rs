//! Ready-made scenarios for the three propagation figures and the
//! order-of-magnitude width estimate.

use std::fmt;

use crate::diagnostics::PeakSettings;
use crate::error::{Error, Result};
use crate::medium::{AtomicParams, DEFAULT_DOMINANCE};
use crate::propagator::{Grid, SolverConfig, SolverMode, Sponge};
use crate::scenario::{OutputKind, OutputSpec, ScenarioConfig};
use crate::soliton::{
    amplitude_bound, breather_period, min_width_bound, nonlinear_length, photon_flux,
    sech_fwhm_factor, width_fwhm, SolitonOrder, SolitonSpec,
};
use crate::units::HBAR;
use crate::waveguide::CouplingBeam;

pub const DENSITY: f64 = 1e20;
pub const DIPOLE: f64 = 3e-29;
pub const GAMMA: f64 = 3e7;
pub const LAMBDA_P: f64 = 800e-9;
/// `E_p,max / E_c` of the width estimate.
pub const AMPLITUDE_RATIO: f64 = 1e-2;

pub const NAMES: [&str; 4] = ["fig3", "fig4", "fig5", "estimate"];

/// `γħ/μ` for the preset medium, V/m.
pub fn field_unit() -> f64 {
    GAMMA * HBAR / DIPOLE
}

/// Layout of a figure preset in units of the initial soliton FWHM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureLayout {
    /// Peak coupling amplitude in units of `γħ/μ`.
    pub coupling_peak: f64,
    /// `E_p,max / E_c` at the coupling peak.
    pub probe_ratio: f64,
    pub gamma2: f64,
    pub delta13: f64,
    pub delta24: f64,
    pub order: SolitonOrder,
    pub offset_fwhm: f64,
    pub waist_fwhm: f64,
    /// Half-width of the domain in coupling waists.
    pub half_domain_waists: f64,
    pub nx: usize,
    /// Nonlinear phase accumulated per step at the initial probe peak, rad.
    pub phase_step: f64,
    /// Propagation length in breather periods.
    pub periods: f64,
    pub stride: usize,
    pub regime_override: bool,
}

impl FigureLayout {
    pub fn fig3() -> Self {
        FigureLayout {
            coupling_peak: 1.0,
            probe_ratio: 0.04,
            gamma2: 1e-8 * GAMMA,
            delta13: 0.0,
            delta24: -100.0 * GAMMA,
            order: SolitonOrder::Second,
            offset_fwhm: 0.5,
            waist_fwhm: 10.0,
            half_domain_waists: 4.0,
            nx: 2048,
            phase_step: 0.01,
            periods: 10.0,
            stride: 10,
            regime_override: false,
        }
    }

    pub fn fig4() -> Self {
        FigureLayout {
            gamma2: 2e-8 * GAMMA,
            order: SolitonOrder::Fundamental,
            offset_fwhm: 2.0,
            nx: 4096,
            periods: 41.0,
            ..Self::fig3()
        }
    }

    pub fn fig5() -> Self {
        FigureLayout {
            gamma2: 5e-9 * GAMMA,
            delta13: -5e-7 * GAMMA,
            probe_ratio: 0.02,
            order: SolitonOrder::Fundamental,
            offset_fwhm: 2.0,
            periods: 150.0,
            regime_override: true,
            ..Self::fig3()
        }
    }

    pub fn atomic(&self) -> AtomicParams {
        AtomicParams::uniform(DENSITY, DIPOLE, GAMMA)
            .expect("preset medium is valid")
            .with_gamma2(self.gamma2)
            .with_detunings(self.delta13, 0.0, self.delta24)
    }

    pub fn scenario(&self) -> Result<ScenarioConfig> {
        let atomic = self.atomic();
        let e_c = self.coupling_peak * field_unit();
        let e_p = self.probe_ratio * e_c;
        let fwhm = width_fwhm(&atomic, e_c, e_p, LAMBDA_P)?;
        let waist = self.waist_fwhm * fwhm;
        let half = self.half_domain_waists * waist;

        // In SI the fundamental soliton's peak nonlinear phase grows at 2κ²/(2k_p)
        // per metre, κ = 2ln(2+√3)/FWHM; the second order has four times the
        // peak intensity. The breather period is π/(4κ²) in units of 2k_p.
        let k_p = crate::units::wavenumber(LAMBDA_P);
        let kappa = crate::soliton::sech_fwhm_factor() / fwhm;
        let order = self.order.number() as f64;
        let phase_rate = order * order * kappa * kappa / k_p;
        let period = std::f64::consts::PI / (4.0 * kappa * kappa) * 2.0 * k_p;
        let length = self.periods * period;
        let nz = ((length * phase_rate / self.phase_step).ceil() as usize).div_ceil(self.stride)
            * self.stride;
        let dz = length / nz as f64;

        let m = crate::soliton::eigenvalue_for_peak(e_p, field_unit());
        Ok(ScenarioConfig {
            atomic,
            beam: CouplingBeam::gaussian(e_c, waist),
            probe: crate::scenario::ProbeSource::Soliton(SolitonSpec {
                m,
                order: self.order,
                center_x: self.offset_fwhm * fwhm,
                transverse_velocity: 0.0,
            }),
            lambda_p: LAMBDA_P,
            grid: Grid {
                x_min: -half,
                x_max: half,
                nx: self.nx,
                dz,
                nz,
            },
            solver: SolverConfig {
                mode: SolverMode::FullChi,
                sponge: Sponge {
                    fraction: 0.1,
                    peak_rate: None,
                },
                corrector_iterations: 2,
                snapshot_stride: self.stride,
                regime_override: self.regime_override,
                dominance: DEFAULT_DOMINANCE,
            },
            peaks: PeakSettings::default(),
            outputs: vec![
                OutputSpec {
                    kind: OutputKind::Metrics,
                    path: "metrics.csv".into(),
                },
                OutputSpec {
                    kind: OutputKind::Snapshots,
                    path: "field.bin".into(),
                },
            ],
        })
    }
}

/// A soliton in a uniformly coupled, lossless medium, propagated with the
/// cubic model and no sponge. Lengths are in units of the soliton FWHM and
/// of the fundamental nonlinear length `2k_p/κ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformLayout {
    pub probe_ratio: f64,
    pub delta24: f64,
    pub order: SolitonOrder,
    pub half_domain_fwhm: f64,
    pub nx: usize,
    pub nonlinear_lengths: f64,
    pub steps_per_length: usize,
    pub stride: usize,
    pub mode: SolverMode,
}

impl Default for UniformLayout {
    fn default() -> Self {
        UniformLayout {
            probe_ratio: AMPLITUDE_RATIO,
            delta24: -10.0 * GAMMA,
            order: SolitonOrder::Fundamental,
            half_domain_fwhm: 6.0,
            nx: 2048,
            nonlinear_lengths: 10.0,
            steps_per_length: 200,
            stride: 10,
            mode: SolverMode::CubicNlse,
        }
    }
}

impl UniformLayout {
    pub fn atomic(&self) -> AtomicParams {
        AtomicParams::uniform(DENSITY, DIPOLE, GAMMA)
            .expect("preset medium is valid")
            .with_detunings(0.0, 0.0, self.delta24)
    }

    /// Amplitude FWHM of the fundamental soliton at this probe ratio, m.
    pub fn fwhm(&self) -> Result<f64> {
        let e_c = field_unit();
        width_fwhm(&self.atomic(), e_c, self.probe_ratio * e_c, LAMBDA_P)
    }

    pub fn nonlinear_length(&self) -> Result<f64> {
        Ok(nonlinear_length(
            sech_fwhm_factor() / self.fwhm()?,
            LAMBDA_P,
        ))
    }

    pub fn breather_period(&self) -> Result<f64> {
        Ok(breather_period(sech_fwhm_factor() / self.fwhm()?, LAMBDA_P))
    }

    pub fn scenario(&self) -> Result<ScenarioConfig> {
        let e_c = field_unit();
        let fwhm = self.fwhm()?;
        let half = self.half_domain_fwhm * fwhm;
        let nz = ((self.nonlinear_lengths * self.steps_per_length as f64).round() as usize).max(1);
        let dz = self.nonlinear_length()? * self.nonlinear_lengths / nz as f64;
        Ok(ScenarioConfig {
            atomic: self.atomic(),
            beam: CouplingBeam::uniform(e_c),
            probe: crate::scenario::ProbeSource::Soliton(SolitonSpec {
                m: crate::soliton::eigenvalue_for_peak(self.probe_ratio * e_c, field_unit()),
                order: self.order,
                center_x: 0.0,
                transverse_velocity: 0.0,
            }),
            lambda_p: LAMBDA_P,
            grid: Grid {
                x_min: -half,
                x_max: half,
                nx: self.nx,
                dz,
                nz,
            },
            solver: SolverConfig {
                mode: self.mode,
                sponge: Sponge {
                    fraction: 0.0,
                    peak_rate: None,
                },
                corrector_iterations: 2,
                snapshot_stride: self.stride,
                regime_override: false,
                dominance: DEFAULT_DOMINANCE,
            },
            peaks: PeakSettings::default(),
            outputs: vec![OutputSpec {
                kind: OutputKind::Metrics,
                path: "metrics.csv".into(),
            }],
        })
    }
}

/// Order-of-magnitude figures for a weak-light soliton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateReport {
    pub e_c: f64,
    pub e_p_max: f64,
    pub re_gamma4: f64,
    /// m.
    pub fwhm: f64,
    /// Largest admissible probe amplitude, V/m.
    pub amplitude_bound: f64,
    /// Narrowest admissible soliton, m.
    pub min_width: f64,
    /// Photons·mm⁻²·ns⁻¹.
    pub photon_flux: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateInputs {
    pub density: f64,
    pub dipole: f64,
    pub gamma: f64,
    pub lambda_p: f64,
    /// `Re Γ₄` in s⁻¹.
    pub re_gamma4: f64,
    /// Coupling amplitude, V/m.
    pub e_c: f64,
    pub amplitude_ratio: f64,
}

impl Default for EstimateInputs {
    fn default() -> Self {
        EstimateInputs {
            density: DENSITY,
            dipole: DIPOLE,
            gamma: GAMMA,
            lambda_p: LAMBDA_P,
            re_gamma4: -10.0 * GAMMA,
            e_c: field_unit(),
            amplitude_ratio: AMPLITUDE_RATIO,
        }
    }
}

pub fn estimate(inputs: &EstimateInputs) -> Result<EstimateReport> {
    let params = AtomicParams::uniform(inputs.density, inputs.dipole, inputs.gamma)?
        .with_detunings(0.0, 0.0, inputs.re_gamma4);
    if !(inputs.amplitude_ratio > 0.0) {
        return Err(Error::domain("amplitude_ratio", "must be positive"));
    }
    let e_p_max = inputs.amplitude_ratio * inputs.e_c;
    Ok(EstimateReport {
        e_c: inputs.e_c,
        e_p_max,
        re_gamma4: inputs.re_gamma4,
        fwhm: width_fwhm(&params, inputs.e_c, e_p_max, inputs.lambda_p)?,
        amplitude_bound: amplitude_bound(&params, inputs.e_c, DEFAULT_DOMINANCE)?,
        min_width: min_width_bound(&params, inputs.lambda_p),
        photon_flux: photon_flux(e_p_max, inputs.lambda_p),
    })
}

impl fmt::Display for EstimateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "coupling amplitude      {:.4e} V/m", self.e_c)?;
        writeln!(f, "probe peak amplitude    {:.4e} V/m", self.e_p_max)?;
        writeln!(f, "Re Gamma4               {:.4e} 1/s", self.re_gamma4)?;
        writeln!(f, "soliton FWHM            {:.4} mm", self.fwhm * 1e3)?;
        writeln!(
            f,
            "probe amplitude bound   {:.4e} V/m",
            self.amplitude_bound
        )?;
        writeln!(f, "minimum soliton width   {:.4e} m", self.min_width)?;
        write!(
            f,
            "peak photon flux        {:.3} photons/(mm^2 ns)",
            self.photon_flux
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    Scenario(Box<ScenarioConfig>),
    Estimate(EstimateReport),
}

pub fn preset(name: &str) -> Result<Preset> {
    match name {
        "fig3" => Ok(Preset::Scenario(Box::new(FigureLayout::fig3().scenario()?))),
        "fig4" => Ok(Preset::Scenario(Box::new(FigureLayout::fig4().scenario()?))),
        "fig5" => Ok(Preset::Scenario(Box::new(FigureLayout::fig5().scenario()?))),
        "estimate" => Ok(Preset::Estimate(estimate(&EstimateInputs::default())?)),
        other => Err(Error::Config(format!(
            "unknown preset `{other}`; choose one of {}",
            NAMES.join(", ")
        ))),
    }
}

pub fn scenario_preset(name: &str) -> Result<ScenarioConfig> {
    match preset(name)? {
        Preset::Scenario(s) => Ok(*s),
        Preset::Estimate(_) => Err(Error::Config(format!(
            "`{name}` is a report, not a scenario"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_media() {
        let s4 = scenario_preset("fig4").unwrap();
        assert_eq!(s4.atomic.gamma2, 2e-8 * GAMMA);
        let s5 = scenario_preset("fig5").unwrap();
        assert_eq!(s5.atomic.delta13, -5e-7 * GAMMA);
        let s3 = scenario_preset("fig3").unwrap();
        assert_eq!(s3.atomic.two_photon_detuning(), -100.0 * GAMMA);
        for s in [s3, s4, s5] {
            s.validate().unwrap();
        }
    }

    #[test]
    fn estimate_matches_hand_values() {
        let r = estimate(&EstimateInputs::default()).unwrap();
        assert!((r.fwhm - 5.916485753e-5).abs() < 1e-12);
        assert!((r.photon_flux - 5.94436).abs() < 1e-4);
        assert!((r.min_width - 1.870957072e-7).abs() < 1e-15);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(preset("fig9"), Err(Error::Config(_))));
    }
}
