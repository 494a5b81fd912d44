//! Transverse solitons of a weak probe beam in a four-level EIT medium with a
//! Gaussian coupling beam.
//!
//! The crate covers the full chain from atomic parameters to propagated
//! probe fields: the steady-state susceptibility and its Kerr expansion
//! ([`medium`]), normalization scales ([`units`]), soliton initial
//! conditions and estimates ([`soliton`]), the coupling-beam landscape
//! ([`waveguide`]), z-propagation ([`propagator`]), beam diagnostics
//! ([`diagnostics`]) and file interchange ([`scenario`], [`output`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod medium;
pub mod output;
pub mod presets;
pub mod propagator;
pub mod scenario;
pub mod soliton;
pub mod tridiag;
pub mod units;
pub mod waveguide;

pub use error::{Error, Result};
pub use medium::{
    kerr_expansion, nonlinear_coefficient, susceptibility, validate_regime, AtomicParams,
    KerrCoefficients, RegimeCondition,
};
pub use propagator::{
    cn_step, initialize, regime_report, run, sample_probe, split_step_oracle, FieldState, Grid,
    Solver, SolverConfig, SolverMode, Sponge, Trajectory,
};
pub use scenario::{load_scenario, parse_scenario, render_scenario, ScenarioConfig};
pub use soliton::{soliton_profile, SolitonOrder, SolitonSpec};
pub use units::{derive_units, NormalizationUnits};
pub use waveguide::{
    coupling_amplitude, susceptibility_profile, CouplingBeam, Taper, TransverseProfile,
};
