//! Physical constants and the dimensionless system used by the solver.
//!
//! Fields are measured in units of `E₀ = γħ/μ`, the transverse coordinate in
//! `L_a = √(ε₀γħ/(nμ²k_p²))` and the propagation coordinate in
//! `L_b = 2ε₀γħ/(nμ²k_p)`. In these units the probe equation reads
//!
//! ```text
//! i ∂u/∂ζ + ∂²u/∂ξ² + χ̃ u = 0,     χ̃ = k_p² L_a² χ
//! ```
//!
//! where `χ̃` is the susceptibility measured in `nμ²/(ε₀ħγ)`.
//!
//! The single-μ, single-γ convention takes `μ = μ₁₃` and `γ = γ₃`. Decay rates
//! are plain rates in s⁻¹; `γ = 30 MHz` means `3.0e7 s⁻¹`, no factor 2π.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::medium::AtomicParams;

/// CODATA 2018 vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// CODATA 2018 vacuum permeability, H/m.
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub eps0: f64,
    pub mu0: f64,
    pub hbar: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants {
        eps0: EPS0,
        mu0: MU0,
        hbar: HBAR,
        c: C,
    };
}

/// Probe wavenumber `2π/λ`.
pub fn wavenumber(lambda_p: f64) -> f64 {
    2.0 * PI / lambda_p
}

/// Probe angular frequency `2πc/λ`.
pub fn angular_frequency(lambda_p: f64) -> f64 {
    2.0 * PI * C / lambda_p
}

/// Scales converting SI quantities to the solver's dimensionless coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationUnits {
    /// Field scale `E₀`, V/m.
    pub e0: f64,
    /// Transverse length scale `L_a`, m.
    pub la: f64,
    /// Longitudinal length scale `L_b`, m.
    pub lb: f64,
    /// Probe wavenumber, m⁻¹.
    pub k_p: f64,
}

impl NormalizationUnits {
    pub fn derive(params: &AtomicParams, lambda_p: f64) -> Result<Self> {
        positive("n", params.n)?;
        positive("mu13", params.mu13)?;
        positive("gamma3", params.gamma3)?;
        positive("lambda_p", lambda_p)?;

        let mu = params.mu13;
        let gamma = params.gamma3;
        let k_p = wavenumber(lambda_p);
        let e0 = gamma * HBAR / mu;
        let la = (EPS0 * gamma * HBAR / (params.n * mu * mu * k_p * k_p)).sqrt();
        let lb = 2.0 * EPS0 * gamma * HBAR / (params.n * mu * mu * k_p);
        Ok(NormalizationUnits { e0, la, lb, k_p })
    }

    /// `nμ²/(ε₀ħγ)`, the natural unit of susceptibility.
    pub fn chi_unit(&self) -> f64 {
        1.0 / (self.k_p * self.k_p * self.la * self.la)
    }

    pub fn field_to_dimensionless(&self, e: f64) -> f64 {
        e / self.e0
    }

    pub fn field_to_si(&self, u: f64) -> f64 {
        u * self.e0
    }

    pub fn x_to_dimensionless(&self, x: f64) -> f64 {
        x / self.la
    }

    pub fn x_to_si(&self, xi: f64) -> f64 {
        xi * self.la
    }

    pub fn z_to_dimensionless(&self, z: f64) -> f64 {
        z / self.lb
    }

    pub fn z_to_si(&self, zeta: f64) -> f64 {
        zeta * self.lb
    }
}

/// Free function form of [`NormalizationUnits::derive`].
pub fn derive_units(params: &AtomicParams, lambda_p: f64) -> Result<NormalizationUnits> {
    NormalizationUnits::derive(params, lambda_p)
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(
            field,
            format!("must be strictly positive, got {v}"),
        ))
    }
}
