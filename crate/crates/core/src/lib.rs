//! Photon recoil of an emitter embedded in a dilute, far-detuned dielectric.
//!
//! The crate computes the dressed photon spectrum produced when an excited
//! two-level atom decays inside a medium of polarizable atoms, the
//! probabilities of leaving medium atoms excited, the mean recoil of the
//! emitter, and the energy balance between field, medium excitation and
//! field-medium interaction. Every closed-form result is paired with an
//! independent brute-force line integral.
//!
//! Units: `ω₀ = ħ = c = 1` throughout.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod medium;
pub mod model;
pub mod observables;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
pub use medium::{
    density_for_n_alpha, inverse_detuning, line_center_frequency, line_center_response,
    polarizability, refractive_index, self_consistent_pole, self_energy, self_energy_from_coupling,
    MediumResponse,
};
pub use model::{mu_sq_from_gamma0, validate, ModelParams, RegimeCheck, ValidationReport, Verdict};
pub use observables::{
    energy_ledger, mean_photon_frequency, mean_recoil_energy, recoil, total_photon_probability,
    Analysis, EnergyLedger, LedgerTerm, Recoil, RecoilStats,
};
pub use quadrature::{integrate_line, ww_pole_value, LineIntegral, OracleReport, QuadratureSpec};
pub use spectral::{
    excitation_ratios, medium_excitation_probability, photon_density, ExcitationProbabilities,
    ExcitationRatios, LineShape, SpectralDensity,
};
