//! Optical response of the four-level EIT medium.
//!
//! Level scheme: probe on 1→3 and 2→4, coupling on 2→3, ground states 1 and 2
//! with no direct dipole transition. The steady-state susceptibility seen by
//! the probe is a closed-form function of the squared Rabi frequencies
//! `|Ω_p13|²`, `|Ω_p24|²`, `|Ω_c23|²` and the complex rates
//!
//! ```text
//! Γ₂ = Δ₂₃ − Δ₁₃ − iγ₂
//! Γ₃ = Δ₁₃ + iγ₃
//! Γ₄ = Δ₂₄ + Δ₁₃ − Δ₂₃ + iγ₄
//! ```

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::units::{EPS0, HBAR, MU0};

/// Below this magnitude a susceptibility denominator is treated as zero.
const SINGULAR_FLOOR: f64 = 1e-300;

/// Relative spread tolerated between the two Richardson estimates of χ⁽³⁾.
const RICHARDSON_TOLERANCE: f64 = 1e-6;

/// Largest first-order expansion parameter used when probing χ⁽³⁾.
const KERR_PROBE_EPSILON: f64 = 1e-6;

/// Atomic density, dipole moments, decay rates and light detunings.
///
/// Rates and detunings are in s⁻¹, dipoles in C·m, density in m⁻³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicParams {
    pub n: f64,
    pub mu13: f64,
    pub mu24: f64,
    pub mu23: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub gamma4: f64,
    pub delta13: f64,
    pub delta23: f64,
    pub delta24: f64,
}

impl AtomicParams {
    /// Equal dipoles `μ` and equal upper-state decays `γ₃ = γ₄ = γ`, with
    /// `γ₂ = 0` and all detunings zero.
    pub fn uniform(n: f64, mu: f64, gamma: f64) -> Result<Self> {
        let p = AtomicParams {
            n,
            mu13: mu,
            mu24: mu,
            mu23: mu,
            gamma2: 0.0,
            gamma3: gamma,
            gamma4: gamma,
            delta13: 0.0,
            delta23: 0.0,
            delta24: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_gamma2(mut self, gamma2: f64) -> Self {
        self.gamma2 = gamma2;
        self
    }

    pub fn with_detunings(mut self, delta13: f64, delta23: f64, delta24: f64) -> Self {
        self.delta13 = delta13;
        self.delta23 = delta23;
        self.delta24 = delta24;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let strictly_positive = [
            ("n", self.n),
            ("mu13", self.mu13),
            ("mu24", self.mu24),
            ("mu23", self.mu23),
            ("gamma3", self.gamma3),
            ("gamma4", self.gamma4),
        ];
        for (field, v) in strictly_positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(
                    field,
                    format!("must be strictly positive, got {v}"),
                ));
            }
        }
        if !(self.gamma2.is_finite() && self.gamma2 >= 0.0) {
            return Err(Error::domain(
                "gamma2",
                format!("must be non-negative, got {}", self.gamma2),
            ));
        }
        for (field, v) in [
            ("delta13", self.delta13),
            ("delta23", self.delta23),
            ("delta24", self.delta24),
        ] {
            if !v.is_finite() {
                return Err(Error::domain(field, "must be finite"));
            }
        }
        Ok(())
    }

    /// `Re(Γ₄) = Δ₂₄ + Δ₁₃ − Δ₂₃`.
    pub fn two_photon_detuning(&self) -> f64 {
        self.delta24 + self.delta13 - self.delta23
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRates {
    pub gamma2: Complex64,
    pub gamma3: Complex64,
    pub gamma4: Complex64,
}

pub fn complex_rates(params: &AtomicParams) -> ComplexRates {
    ComplexRates {
        gamma2: Complex64::new(params.delta23 - params.delta13, -params.gamma2),
        gamma3: Complex64::new(params.delta13, params.gamma3),
        gamma4: Complex64::new(params.two_photon_detuning(), params.gamma4),
    }
}

/// Squared Rabi frequencies, s⁻².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiSquares {
    pub omega_p13_sq: f64,
    pub omega_p24_sq: f64,
    pub omega_c23_sq: f64,
}

impl RabiSquares {
    pub fn new(params: &AtomicParams, e_p: Complex64, e_c: Complex64) -> Self {
        let ep_sq = e_p.norm_sqr();
        let ec_sq = e_c.norm_sqr();
        RabiSquares {
            omega_p13_sq: rabi_sq(params.mu13, ep_sq),
            omega_p24_sq: rabi_sq(params.mu24, ep_sq),
            omega_c23_sq: rabi_sq(params.mu23, ec_sq),
        }
    }
}

/// `|μ|²|E|²/(4ħ²)`
fn rabi_sq(mu: f64, e_sq: f64) -> f64 {
    mu * mu * e_sq / (4.0 * HBAR * HBAR)
}

/// Pre-evaluated form of the susceptibility for repeated calls with one
/// parameter set. The propagator evaluates this at every grid point.
#[derive(Debug, Clone, Copy)]
pub struct SusceptibilityModel {
    rates: ComplexRates,
    prefactor: Complex64,
    dipole_ratio: f64,
    p13_per_field_sq: f64,
    p24_per_field_sq: f64,
    c23_per_field_sq: f64,
}

impl SusceptibilityModel {
    pub fn new(params: &AtomicParams) -> Self {
        let rates = complex_rates(params);
        let prefactor = -params.n * params.mu13 * params.mu13 / (EPS0 * HBAR * rates.gamma3);
        SusceptibilityModel {
            rates,
            prefactor,
            dipole_ratio: (params.mu24 * params.mu24) / (params.mu13 * params.mu13),
            p13_per_field_sq: rabi_sq(params.mu13, 1.0),
            p24_per_field_sq: rabi_sq(params.mu24, 1.0),
            c23_per_field_sq: rabi_sq(params.mu23, 1.0),
        }
    }

    pub fn rates(&self) -> &ComplexRates {
        &self.rates
    }

    /// `|Ω_p13|²` per unit `|E_p|²`.
    pub fn probe_rabi_per_field_sq(&self) -> f64 {
        self.p13_per_field_sq
    }

    /// χ as a function of `|E_p|²` and `|E_c|²` in (V/m)².
    pub fn eval(&self, ep_sq: f64, ec_sq: f64) -> Result<Complex64> {
        self.eval_rabi(
            self.p13_per_field_sq * ep_sq,
            self.p24_per_field_sq * ep_sq,
            self.c23_per_field_sq * ec_sq,
        )
    }

    /// χ from the three squared Rabi frequencies.
    ///
    /// The first bracketed term `1 − (C/Γ₃ + B)/(M + B)` is evaluated as the
    /// identical `(Γ₂ + |Ω_p24|²/Γ₄)/(M + B)` so the near-cancellation under
    /// EIT does not cost significant digits.
    pub fn eval_rabi(&self, p13: f64, p24: f64, c23: f64) -> Result<Complex64> {
        let ComplexRates {
            gamma2: g2,
            gamma3: g3,
            gamma4: g4,
        } = self.rates;

        let m = g2 + p24 / g4 + c23 / g3;
        if m.norm() < SINGULAR_FLOOR {
            return Err(self.singular(m.norm(), p13, c23));
        }
        let cross = c23 * p13 / (g3 * g3 * m);
        let denom = m + cross;
        if denom.norm() < SINGULAR_FLOOR {
            return Err(self.singular(denom.norm(), p13, c23));
        }

        let saturated = (g2 + p24 / g4) / denom;
        let kerr = self.dipole_ratio * c23 * p13 / (g4 * g3.conj())
            * ((1.0 + p13 / (g3 * m)) / denom).norm_sqr();
        Ok(self.prefactor * (saturated + kerr))
    }

    fn singular(&self, magnitude: f64, p13: f64, c23: f64) -> Error {
        Error::Singular {
            magnitude,
            point: format!(
                "|Ω_p13|² = {p13:e} s⁻², |Ω_c23|² = {c23:e} s⁻², Γ₂ = {}, Γ₃ = {}, Γ₄ = {}",
                self.rates.gamma2, self.rates.gamma3, self.rates.gamma4
            ),
        }
    }
}

/// Full steady-state susceptibility of the medium for probe amplitude `e_p`
/// and coupling amplitude `e_c` (V/m). Dimensionless.
pub fn susceptibility(params: &AtomicParams, e_p: Complex64, e_c: Complex64) -> Result<Complex64> {
    SusceptibilityModel::new(params).eval(e_p.norm_sqr(), e_c.norm_sqr())
}

/// Weak-probe expansion `χ ≈ χ⁽¹⁾ + χ⁽³⁾|E_p|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrCoefficients {
    pub chi1: Complex64,
    /// Per (V/m)².
    pub chi3: Complex64,
}

/// Extracts χ⁽¹⁾ and χ⁽³⁾ from the full susceptibility by small-amplitude
/// differencing in `|E_p|²` with one Richardson elimination (step ratio 2).
pub fn kerr_expansion(params: &AtomicParams, e_c: Complex64) -> Result<KerrCoefficients> {
    kerr_expansion_with(&SusceptibilityModel::new(params), e_c.norm_sqr())
}

pub(crate) fn kerr_expansion_with(
    model: &SusceptibilityModel,
    ec_sq: f64,
) -> Result<KerrCoefficients> {
    let ratio24 = model.p24_per_field_sq / model.p13_per_field_sq;
    let c23 = model.c23_per_field_sq * ec_sq;
    let chi_at = |p13: f64| model.eval_rabi(p13, ratio24 * p13, c23);

    let chi1 = chi_at(0.0)?;

    // Size the probe step from the terms in which |Ω_p13|² enters at first order.
    let ComplexRates {
        gamma2: g2,
        gamma3: g3,
        gamma4: g4,
    } = model.rates;
    let m0 = g2 + c23 / g3;
    let inverse_scale = [
        1.0 / (g3 * m0).norm(),
        c23 / (g3 * g3 * m0 * m0).norm(),
        ratio24 / (g4 * m0).norm(),
    ]
    .into_iter()
    .filter(|v| v.is_finite())
    .fold(0.0_f64, f64::max);
    let p0 = KERR_PROBE_EPSILON / inverse_scale;

    let quotient = |p: f64| -> Result<Complex64> { Ok((chi_at(p)? - chi1) / p) };
    let d0 = quotient(p0)?;
    let d1 = quotient(p0 / 2.0)?;
    let d2 = quotient(p0 / 4.0)?;
    let coarse = 2.0 * d1 - d0;
    let fine = 2.0 * d2 - d1;

    let noise = 1e-12 * chi1.norm() / p0;
    let spread = (coarse - fine).norm();
    if spread > RICHARDSON_TOLERANCE * fine.norm().max(noise) {
        return Err(Error::NonConvergent {
            first: coarse.norm(),
            second: fine.norm(),
        });
    }

    Ok(KerrCoefficients {
        chi1,
        chi3: fine * model.p13_per_field_sq,
    })
}

/// Cubic NLSE coefficient
/// `C_n = 2μ₀ n |μ₁₃|²|μ₂₄|² ω_p² / (|μ₂₃|² |E_c|² Re(Γ₄) ħ)`, in m⁻²·(V/m)⁻².
pub fn nonlinear_coefficient(params: &AtomicParams, e_c_peak: f64, omega_p: f64) -> Result<f64> {
    let re_g4 = params.two_photon_detuning();
    if re_g4 == 0.0 {
        return Err(Error::SingularDetuning);
    }
    if !(e_c_peak.is_finite() && e_c_peak > 0.0) {
        return Err(Error::domain(
            "e_c_peak",
            format!("must be positive, got {e_c_peak}"),
        ));
    }
    let num = 2.0 * MU0 * params.n * params.mu13.powi(2) * params.mu24.powi(2) * omega_p * omega_p;
    Ok(num / (params.mu23.powi(2) * e_c_peak * e_c_peak * re_g4 * HBAR))
}

/// Which "much greater than" relation a [`Condition`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeCondition {
    /// `γ₃, γ₄, |Ω_c23| ≫ |Ω_p13|, |Ω_p24|` (adiabatic EIT condition).
    EitRabi,
    /// `|Ω_p24|²/|Γ₄| ≫ |Γ₂|`: ground-state dephasing negligible.
    GroundDephasing,
    /// `|Ω_c23|²/|Γ₃| ≫ |Ω_p24|²/|Γ₄|`: probe-induced shift below coupling.
    ProbeVsCoupling,
    /// `|Δ₂₄ + Δ₁₃ − Δ₂₃| ≫ γ₄`: two-photon absorption negligible.
    TwoPhotonDetuning,
}

impl RegimeCondition {
    pub fn label(self) -> &'static str {
        match self {
            RegimeCondition::EitRabi => "EIT condition",
            RegimeCondition::GroundDephasing => "ground-state dephasing",
            RegimeCondition::ProbeVsCoupling => "probe vs coupling",
            RegimeCondition::TwoPhotonDetuning => "two-photon detuning",
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            RegimeCondition::EitRabi => "min(γ₃, γ₄, |Ω_c23|) ≫ max(|Ω_p13|, |Ω_p24|)",
            RegimeCondition::GroundDephasing => "|Ω_p24|²/|Γ₄| ≫ |Γ₂|",
            RegimeCondition::ProbeVsCoupling => "|Ω_c23|²/|Γ₃| ≫ |Ω_p24|²/|Γ₄|",
            RegimeCondition::TwoPhotonDetuning => "|Δ₂₄ + Δ₁₃ − Δ₂₃| ≫ γ₄",
        }
    }
}

impl fmt::Display for RegimeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label(), self.relation())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Condition {
    pub kind: RegimeCondition,
    /// The side required to dominate, s⁻¹.
    pub dominant: f64,
    /// The side required to be negligible, s⁻¹.
    pub subordinate: f64,
    pub ratio: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub dominance: f64,
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn all_satisfied(&self) -> bool {
        self.conditions.iter().all(|c| c.satisfied)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.satisfied)
    }

    pub fn get(&self, kind: RegimeCondition) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.kind == kind)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "validity regime (\"≫\" read as ratio ≥ {})",
            self.dominance
        )?;
        for c in &self.conditions {
            writeln!(
                f,
                "  [{}] {:<24} {:>12.4e} / {:>12.4e} = {:>10.3e}   {}",
                if c.satisfied { "ok" } else { "!!" },
                c.kind.label(),
                c.dominant,
                c.subordinate,
                c.ratio,
                c.kind.relation(),
            )?;
        }
        Ok(())
    }
}

pub const DEFAULT_DOMINANCE: f64 = 10.0;

/// Evaluates the inequalities under which the weak-probe NLSE reduction holds,
/// using the strongest probe `e_p_max` and weakest coupling `e_c_min`.
pub fn validate_regime(
    params: &AtomicParams,
    e_p_max: f64,
    e_c_min: f64,
    dominance: f64,
) -> ConditionReport {
    let rates = complex_rates(params);
    let rabi = RabiSquares::new(
        params,
        Complex64::new(e_p_max, 0.0),
        Complex64::new(e_c_min, 0.0),
    );
    let probe_shift = rabi.omega_p24_sq / rates.gamma4.norm();

    let condition = |kind, dominant: f64, subordinate: f64| {
        let ratio = if subordinate == 0.0 {
            if dominant > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        } else {
            dominant / subordinate
        };
        Condition {
            kind,
            dominant,
            subordinate,
            ratio,
            satisfied: ratio >= dominance,
        }
    };

    let conditions = vec![
        condition(
            RegimeCondition::EitRabi,
            params
                .gamma3
                .min(params.gamma4)
                .min(rabi.omega_c23_sq.sqrt()),
            rabi.omega_p13_sq.sqrt().max(rabi.omega_p24_sq.sqrt()),
        ),
        condition(
            RegimeCondition::GroundDephasing,
            probe_shift,
            rates.gamma2.norm(),
        ),
        condition(
            RegimeCondition::ProbeVsCoupling,
            rabi.omega_c23_sq / rates.gamma3.norm(),
            probe_shift,
        ),
        condition(
            RegimeCondition::TwoPhotonDetuning,
            params.two_photon_detuning().abs(),
            params.gamma4,
        ),
    ];
    ConditionReport {
        dominance,
        conditions,
    }
}
