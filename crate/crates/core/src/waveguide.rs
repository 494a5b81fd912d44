//! Coupling-beam geometry and the susceptibility landscape it induces.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::{kerr_expansion_with, AtomicParams, SusceptibilityModel};
use crate::units::NormalizationUnits;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransverseProfile {
    /// `exp(−(x − x₀)²/w²)`, `w` the 1/e² intensity half-width.
    Gaussian { waist: f64 },
    /// Constant amplitude across the grid (uniform medium).
    Uniform,
}

/// Longitudinal scaling of the coupling amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Taper {
    #[default]
    None,
    /// `1 − r z`
    Linear { rate: f64 },
    /// `exp(−r z)`
    Exponential { rate: f64 },
}

impl Taper {
    pub fn factor(&self, z: f64) -> f64 {
        match *self {
            Taper::None => 1.0,
            Taper::Linear { rate } => 1.0 - rate * z,
            Taper::Exponential { rate } => (-rate * z).exp(),
        }
    }

    /// Checks that the scaling stays in (0, 1] on `[0, z_end]`.
    pub fn validate(&self, z_end: f64) -> Result<()> {
        let rate = match *self {
            Taper::None => return Ok(()),
            Taper::Linear { rate } | Taper::Exponential { rate } => rate,
        };
        if !(rate.is_finite() && rate >= 0.0) {
            return Err(Error::domain(
                "taper_rate",
                format!("must be non-negative, got {rate}"),
            ));
        }
        let end = self.factor(z_end);
        if !(end > 0.0 && end <= 1.0) {
            return Err(Error::domain(
                "taper_rate",
                format!("taper reaches {end} at z = {z_end} m; it must stay within (0, 1]"),
            ));
        }
        Ok(())
    }
}

/// Undepleted, non-diffracting coupling beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingBeam {
    /// V/m.
    pub peak_amplitude: f64,
    pub profile: TransverseProfile,
    /// m.
    pub center_x: f64,
    pub taper: Taper,
}

impl CouplingBeam {
    pub fn gaussian(peak_amplitude: f64, waist: f64) -> Self {
        CouplingBeam {
            peak_amplitude,
            profile: TransverseProfile::Gaussian { waist },
            center_x: 0.0,
            taper: Taper::None,
        }
    }

    pub fn uniform(peak_amplitude: f64) -> Self {
        CouplingBeam {
            peak_amplitude,
            profile: TransverseProfile::Uniform,
            center_x: 0.0,
            taper: Taper::None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.peak_amplitude.is_finite() && self.peak_amplitude > 0.0) {
            return Err(Error::domain(
                "peak_amplitude",
                format!("must be positive, got {}", self.peak_amplitude),
            ));
        }
        if let TransverseProfile::Gaussian { waist } = self.profile {
            if !(waist.is_finite() && waist > 0.0) {
                return Err(Error::domain(
                    "waist",
                    format!("must be positive, got {waist}"),
                ));
            }
        }
        if !self.center_x.is_finite() {
            return Err(Error::domain("center_x", "must be finite"));
        }
        Ok(())
    }

    /// Transverse shape at `x`, peak 1.
    pub fn shape(&self, x: f64) -> f64 {
        match self.profile {
            TransverseProfile::Gaussian { waist } => {
                let s = (x - self.center_x) / waist;
                (-s * s).exp()
            }
            TransverseProfile::Uniform => 1.0,
        }
    }

    pub fn amplitude(&self, x: f64, z: f64) -> f64 {
        self.peak_amplitude * self.shape(x) * self.taper.factor(z)
    }
}

/// Coupling amplitude `E_c(x, z)`, V/m.
pub fn coupling_amplitude(beam: &CouplingBeam, x: f64, z: f64) -> Complex64 {
    Complex64::new(beam.amplitude(x, z), 0.0)
}

/// Pointwise χ⁽¹⁾ and χ⁽³⁾ across a transverse cut.
#[derive(Debug, Clone, PartialEq)]
pub struct SusceptibilityProfile {
    pub xs: Vec<f64>,
    /// Dimensionless.
    pub chi1: Vec<Complex64>,
    /// Per (V/m)².
    pub chi3: Vec<Complex64>,
}

impl SusceptibilityProfile {
    /// χ⁽¹⁾ in `μ²n/(ε₀ħγ)` and χ⁽³⁾ in `μ²n/(ε₀ħγE₀²)`.
    pub fn normalized(&self, units: &NormalizationUnits) -> SusceptibilityProfile {
        let chi_unit = units.chi_unit();
        let chi3_unit = chi_unit / (units.e0 * units.e0);
        SusceptibilityProfile {
            xs: self.xs.clone(),
            chi1: self.chi1.iter().map(|c| c / chi_unit).collect(),
            chi3: self.chi3.iter().map(|c| c / chi3_unit).collect(),
        }
    }
}

pub fn susceptibility_profile(
    params: &AtomicParams,
    beam: &CouplingBeam,
    xs: &[f64],
    z: f64,
) -> Result<SusceptibilityProfile> {
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("xs", "positions must be increasing"));
    }
    let model = SusceptibilityModel::new(params);
    let mut chi1 = Vec::with_capacity(xs.len());
    let mut chi3 = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        let ec = beam.amplitude(x, z);
        let k = kerr_expansion_with(&model, ec * ec).map_err(|e| Error::AtPoint {
            x_index: i,
            source: Box::new(e),
        })?;
        chi1.push(k.chi1);
        chi3.push(k.chi3);
    }
    Ok(SusceptibilityProfile {
        xs: xs.to_vec(),
        chi1,
        chi3,
    })
}
