//! Closed-form bright solitons of the cubic equation and the width and
//! amplitude limits that follow from the validity regime.
//!
//! A fundamental soliton with eigenvalue `m` is
//!
//! ```text
//! E_p(x, z) = 2mE₀ sech(√(2|C_n|) mE₀ x) exp(i m²E₀²|C_n| z / k_p)
//! ```
//!
//! so its peak amplitude is `2mE₀` and its amplitude FWHM is
//! `2 ln(2+√3) / (√(2|C_n|) mE₀)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::AtomicParams;
use crate::units::{wavenumber, C, EPS0, HBAR};

/// `2 ln(2 + √3)`: FWHM of `sech(x)` measured on the amplitude.
pub fn sech_fwhm_factor() -> f64 {
    2.0 * (2.0 + 3f64.sqrt()).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolitonOrder {
    Fundamental,
    /// Doubled-amplitude input with the fundamental's sech width.
    Second,
}

impl SolitonOrder {
    pub fn from_number(order: u32) -> Option<Self> {
        match order {
            1 => Some(SolitonOrder::Fundamental),
            2 => Some(SolitonOrder::Second),
            _ => None,
        }
    }

    pub fn number(self) -> u32 {
        match self {
            SolitonOrder::Fundamental => 1,
            SolitonOrder::Second => 2,
        }
    }

    fn amplitude_factor(self) -> f64 {
        self.number() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonSpec {
    /// Dimensionless eigenvalue; the fundamental peak is `2mE₀`.
    pub m: f64,
    pub order: SolitonOrder,
    /// Transverse offset of the soliton centre, m.
    pub center_x: f64,
    /// Initial tilt: the profile carries `exp(i v k_p x)`.
    pub transverse_velocity: f64,
}

impl SolitonSpec {
    pub fn fundamental(m: f64) -> Self {
        SolitonSpec {
            m,
            order: SolitonOrder::Fundamental,
            center_x: 0.0,
            transverse_velocity: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m.is_finite() && self.m > 0.0) {
            return Err(Error::domain(
                "m",
                format!("eigenvalue must be positive, got {}", self.m),
            ));
        }
        if !self.center_x.is_finite() {
            return Err(Error::domain("center_x", "must be finite"));
        }
        if !self.transverse_velocity.is_finite() {
            return Err(Error::domain("transverse_velocity", "must be finite"));
        }
        Ok(())
    }

    /// Peak amplitude of the constructed profile, V/m.
    pub fn peak_amplitude(&self, e0: f64) -> f64 {
        2.0 * self.m * e0 * self.order.amplitude_factor()
    }

    /// Inverse sech width `√(2|C_n|) mE₀`, m⁻¹.
    pub fn inverse_width(&self, c_n: f64, e0: f64) -> f64 {
        (2.0 * c_n.abs()).sqrt() * self.m * e0
    }

    /// Amplitude FWHM of the sech envelope, m.
    pub fn fwhm(&self, c_n: f64, e0: f64) -> f64 {
        sech_fwhm_factor() / self.inverse_width(c_n, e0)
    }
}

/// Propagation length over which a fundamental soliton of inverse width
/// `kappa` (m⁻¹) gains one radian of peak phase, `2k_p/κ²`, m.
pub fn nonlinear_length(kappa: f64, lambda_p: f64) -> f64 {
    2.0 * wavenumber(lambda_p) / (kappa * kappa)
}

/// Period of the second-order breather built on inverse width `kappa`, m.
pub fn breather_period(kappa: f64, lambda_p: f64) -> f64 {
    0.25 * PI * nonlinear_length(kappa, lambda_p)
}

/// Eigenvalue `m` of the fundamental soliton whose peak is `e_p_max`.
pub fn eigenvalue_for_peak(e_p_max: f64, e0: f64) -> f64 {
    e_p_max / (2.0 * e0)
}

/// Samples the soliton at `xs` (m) on the plane `z = 0`.
pub fn soliton_profile(
    spec: &SolitonSpec,
    c_n: f64,
    e0: f64,
    k_p: f64,
    xs: &[f64],
) -> Result<Vec<Complex64>> {
    spec.validate()?;
    if !(c_n < 0.0) {
        return Err(Error::Branch { c_n });
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("xs", "positions must be strictly increasing"));
    }
    let amplitude = spec.peak_amplitude(e0);
    let kappa = spec.inverse_width(c_n, e0);
    let tilt = spec.transverse_velocity * k_p;
    Ok(xs
        .iter()
        .map(|&x| {
            let envelope = amplitude / (kappa * (x - spec.center_x)).cosh();
            Complex64::from_polar(envelope, tilt * x)
        })
        .collect())
}

fn reference_scale(params: &AtomicParams) -> (f64, f64) {
    (params.mu13, params.gamma3)
}

/// Amplitude FWHM of the fundamental soliton set by the coupling/probe
/// amplitude ratio, m.
pub fn width_fwhm(params: &AtomicParams, e_c: f64, e_p_max: f64, lambda_p: f64) -> Result<f64> {
    if !(e_p_max > 0.0) {
        return Err(Error::domain(
            "e_p_max",
            format!("must be positive, got {e_p_max}"),
        ));
    }
    if !(e_c > 0.0) {
        return Err(Error::domain("e_c", format!("must be positive, got {e_c}")));
    }
    let re_g4 = params.two_photon_detuning();
    if re_g4 == 0.0 {
        return Err(Error::SingularDetuning);
    }
    let (mu, _) = reference_scale(params);
    let k_p = wavenumber(lambda_p);
    let scale = (EPS0 * re_g4.abs() * HBAR / (params.n * mu * mu * k_p * k_p)).sqrt();
    Ok(sech_fwhm_factor() * scale * e_c / e_p_max)
}

/// Largest probe amplitude admitted by `E_p,max ≪ min(γħ/μ, E_c)` with "≪"
/// read as a factor `dominance`.
pub fn amplitude_bound(params: &AtomicParams, e_c: f64, dominance: f64) -> Result<f64> {
    if !(dominance > 1.0) {
        return Err(Error::domain(
            "dominance",
            format!("must exceed 1, got {dominance}"),
        ));
    }
    let (mu, gamma) = reference_scale(params);
    Ok((gamma * HBAR / mu).min(e_c) / dominance)
}

/// Width below which no soliton is compatible with the validity regime, m.
pub fn min_width_bound(params: &AtomicParams, lambda_p: f64) -> f64 {
    let (mu, gamma) = reference_scale(params);
    let k_p = wavenumber(lambda_p);
    sech_fwhm_factor() / ((params.n * mu * mu / (EPS0 * gamma * HBAR)).sqrt() * k_p)
}

/// Peak probe photon flux in photons·mm⁻²·ns⁻¹.
pub fn photon_flux(e_p_max: f64, lambda_p: f64) -> f64 {
    let intensity = 0.5 * C * EPS0 * e_p_max * e_p_max;
    let photon_energy = HBAR * 2.0 * PI * C / lambda_p;
    // m⁻²·s⁻¹ → mm⁻²·ns⁻¹
    intensity / photon_energy * 1e-6 * 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::nonlinear_coefficient;
    use crate::units::angular_frequency;

    const GAMMA: f64 = 3e7;
    const MU: f64 = 3e-29;

    fn params(re_g4: f64) -> AtomicParams {
        AtomicParams::uniform(1e20, MU, GAMMA)
            .unwrap()
            .with_detunings(0.0, 0.0, re_g4 * GAMMA)
    }

    fn e0() -> f64 {
        GAMMA * HBAR / MU
    }

    /// Half-maximum crossing of a sampled amplitude by bisection on the
    /// closed form, independent of the diagnostics module.
    fn bisect_half_max(f: impl Fn(f64) -> f64, peak: f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.5 * peak {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn peak_is_two_m_e0() {
        let p = params(-10.0);
        let cn = nonlinear_coefficient(&p, e0(), angular_frequency(800e-9)).unwrap();
        let spec = SolitonSpec {
            center_x: 3e-6,
            ..SolitonSpec::fundamental(0.005)
        };
        let e = soliton_profile(&spec, cn, e0(), 7.85e6, &[3e-6]).unwrap();
        assert!((e[0].norm() - 2.0 * 0.005 * e0()).abs() < 1e-15 * e0());

        let second = SolitonSpec {
            order: SolitonOrder::Second,
            ..spec
        };
        let e = soliton_profile(&second, cn, e0(), 7.85e6, &[3e-6]).unwrap();
        assert!((e[0].norm() - 4.0 * 0.005 * e0()).abs() < 1e-15 * e0());
    }

    #[test]
    fn sampled_width_matches_closed_form() {
        let p = params(-10.0);
        let lambda = 800e-9;
        let ec = e0();
        let ep = 1e-2 * ec;
        let cn = nonlinear_coefficient(&p, ec, angular_frequency(lambda)).unwrap();
        let spec = SolitonSpec::fundamental(eigenvalue_for_peak(ep, e0()));
        let k_p = wavenumber(lambda);
        let amp = |x: f64| soliton_profile(&spec, cn, e0(), k_p, &[x]).unwrap()[0].norm();
        let w = width_fwhm(&p, ec, ep, lambda).unwrap();
        let half = bisect_half_max(amp, ep, 0.0, 10.0 * w);
        let measured = 2.0 * half;
        assert!(
            (measured - w).abs() / w < 1e-3,
            "measured {measured:e} vs {w:e}"
        );
    }

    #[test]
    fn tilt_adds_linear_phase() {
        let p = params(-10.0);
        let cn = nonlinear_coefficient(&p, e0(), angular_frequency(800e-9)).unwrap();
        let spec = SolitonSpec {
            transverse_velocity: 1e-3,
            ..SolitonSpec::fundamental(0.005)
        };
        let k_p = 7.85e6;
        let xs = [0.0, 1e-6];
        let e = soliton_profile(&spec, cn, e0(), k_p, &xs).unwrap();
        let dphi = (e[1] / e[0]).arg();
        assert!((dphi - 1e-3 * k_p * 1e-6).abs() < 1e-12);
    }

    #[test]
    fn dark_branch_rejected() {
        let spec = SolitonSpec::fundamental(0.005);
        let err = soliton_profile(&spec, 1.0, e0(), 1.0, &[0.0]).unwrap_err();
        assert!(matches!(err, Error::Branch { .. }));
    }

    #[test]
    fn non_increasing_positions_rejected() {
        let spec = SolitonSpec::fundamental(0.005);
        let err = soliton_profile(&spec, -1.0, e0(), 1.0, &[0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::Domain { field: "xs", .. }));
    }

    #[test]
    fn estimate_width() {
        let w = width_fwhm(&params(-10.0), e0(), 1e-2 * e0(), 800e-9).unwrap();
        assert!((w - 0.06e-3).abs() / 0.06e-3 < 0.10, "width = {w:e}");
    }

    #[test]
    fn width_depends_on_ratio_only() {
        let p = params(-10.0);
        let a = width_fwhm(&p, e0(), 1e-2 * e0(), 800e-9).unwrap();
        let b = width_fwhm(&p, 5.0 * e0(), 5e-2 * e0(), 800e-9).unwrap();
        let c = width_fwhm(&p, 2.0 * e0(), 1e-2 * e0(), 800e-9).unwrap();
        assert!((a - b).abs() / a < 1e-14);
        assert!((c / a - 2.0).abs() < 1e-14);
    }

    #[test]
    fn amplitude_bound_selects_smaller_scale() {
        let p = params(-10.0);
        let b = amplitude_bound(&p, 10.0 * e0(), 10.0).unwrap();
        assert!((b - e0() / 10.0).abs() < 1e-12 * e0());
        let b = amplitude_bound(&p, 0.1 * e0(), 10.0).unwrap();
        assert!((b - 0.01 * e0()).abs() < 1e-12 * e0());
        // The estimate's probe sits exactly on the factor-100 line, inside the factor-10 bound.
        let b = amplitude_bound(&p, e0(), 10.0).unwrap();
        assert!(1e-2 * e0() <= b);
        assert!(amplitude_bound(&p, e0(), 1.0).is_err());
    }

    #[test]
    fn min_width_relation_to_width() {
        let p = params(-10.0);
        let lambda = 800e-9;
        let bound = min_width_bound(&p, lambda);
        let w = width_fwhm(&p, e0(), 1e-2 * e0(), lambda).unwrap();
        let predicted = w * 1e-2 * (1.0 / 10f64).sqrt();
        assert!((bound - predicted).abs() / bound < 1e-12);
        assert!((bound - 1.870_957_07e-7).abs() / bound < 1e-8);

        let mut dense = p;
        dense.n *= 4.0;
        assert!((min_width_bound(&dense, lambda) / bound - 0.5).abs() < 1e-14);
        assert!((min_width_bound(&p, lambda / 2.0) / bound - 0.5).abs() < 1e-14);
    }

    #[test]
    fn estimate_flux() {
        let f = photon_flux(1e-2 * e0(), 800e-9);
        assert!((f - 6.0).abs() / 6.0 < 0.15, "flux = {f}");
        assert!((photon_flux(2e-2 * e0(), 800e-9) / f - 4.0).abs() < 1e-12);
        assert_eq!(photon_flux(0.0, 800e-9), 0.0);
    }
}
