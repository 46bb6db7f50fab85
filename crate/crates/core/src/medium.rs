//! Frequency response of the far-detuned medium.
//!
//! The photon self-energy from independent (ladder) scattering off medium
//! atoms shifts the free photon pole `E = ω_kʳ + ω_k` to
//! `E* = ω_kʳ + (1 - ½Nα(E*)) ω_k`, where the polarizability carries both the
//! rotating and anti-rotating detunings. The pole is found by plain
//! fixed-point iteration; in the dilute, far-detuned regime the map contracts
//! by a factor of about `½Nα ω_k / ω_m` per step.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Smallest admissible magnitude of a detuning denominator.
pub const RESONANCE_GUARD: f64 = 1e-12;
/// Refractive index is only used below this value of `Nα`.
pub const MAX_N_ALPHA: f64 = 0.5;
pub const POLE_REL_TOL: f64 = 1e-12;
pub const POLE_MAX_ITERATIONS: usize = 20;

const OUTER_MAX_ITERATIONS: usize = 50;

/// Medium response for one photon mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MediumResponse {
    /// Mode frequency the response was evaluated for.
    pub omega_k: f64,
    /// Polarizability `α(E*)` at the dressed pole.
    pub alpha: f64,
    /// `N α(E*)`.
    pub n_alpha: f64,
    /// Refractive index `1 + ½Nα`.
    pub n: f64,
    /// Real part `E*` of the dressed propagator pole.
    pub pole_energy: f64,
    pub iterations: usize,
}

/// `1/Δ(E)` summed over the rotating and anti-rotating channels.
pub fn inverse_detuning(
    energy: f64,
    omega_k: f64,
    omega_r: f64,
    params: &ModelParams,
) -> Result<f64> {
    let rotating = energy - omega_r - params.omega_m();
    let anti_rotating = rotating - 2.0 * omega_k;
    for d in [rotating, anti_rotating] {
        if !(d.abs() >= RESONANCE_GUARD) {
            return Err(Error::MediumResonance {
                energy,
                denominator: d,
            });
        }
    }
    Ok(1.0 / rotating + 1.0 / anti_rotating)
}

/// Polarizability `α(E) = -4π μ² / Δ(E)` of one medium atom for mode `omega_k`.
pub fn polarizability(energy: f64, omega_k: f64, params: &ModelParams) -> Result<f64> {
    let inv = inverse_detuning(energy, omega_k, params.recoil_frequency(omega_k), params)?;
    Ok(-4.0 * PI * params.mu_sq() * inv)
}

/// `n = 1 + ½Nα`, refused once `Nα` leaves the small-`Nα` regime.
pub fn refractive_index(params: &ModelParams, alpha: f64) -> Result<f64> {
    let n_alpha = params.density() * alpha;
    if !(n_alpha < MAX_N_ALPHA) {
        return Err(Error::RegimeViolation(format!(
            "N*alpha = {n_alpha} exceeds the small-N*alpha bound {MAX_N_ALPHA}"
        )));
    }
    Ok(1.0 + 0.5 * n_alpha)
}

/// Photon self-energy `Σ = -½ N α(E) ω_k`.
pub fn self_energy(energy: f64, omega_k: f64, params: &ModelParams) -> Result<f64> {
    let alpha = polarizability(energy, omega_k, params)?;
    Ok(-0.5 * params.density() * alpha * omega_k)
}

/// `ħ V |g_k|²` for one mode under the Gaussian coupling convention.
pub fn coupling_strength(omega_k: f64) -> f64 {
    2.0 * PI * omega_k
}

/// Self-energy written directly in terms of the field coupling,
/// `Σ = ħ² N V |g_k|² μ² / Δ(E)`. Identical to [`self_energy`] by construction.
pub fn self_energy_from_coupling(energy: f64, omega_k: f64, params: &ModelParams) -> Result<f64> {
    let inv = inverse_detuning(energy, omega_k, params.recoil_frequency(omega_k), params)?;
    Ok(params.density() * coupling_strength(omega_k) * params.mu_sq() * inv)
}

/// Solves `E = ω_kʳ + (1 - ½Nα(E)) ω_k` by fixed-point iteration from `E = ω_k`.
pub fn self_consistent_pole(omega_k: f64, params: &ModelParams) -> Result<MediumResponse> {
    if !(omega_k.is_finite() && omega_k > 0.0) {
        return Err(Error::invalid(
            "omega_k",
            format!("must be positive, got {omega_k}"),
        ));
    }
    let omega_r = params.recoil_frequency(omega_k);
    let density = params.density();

    let finish = |pole_energy: f64, iterations: usize| -> Result<MediumResponse> {
        let alpha = polarizability(pole_energy, omega_k, params)?;
        Ok(MediumResponse {
            omega_k,
            alpha,
            n_alpha: density * alpha,
            n: refractive_index(params, alpha)?,
            pole_energy,
            iterations,
        })
    };

    // No medium, no feedback: the free pole is exact.
    if density == 0.0 {
        return finish(omega_r + omega_k, 1);
    }

    let mut energy = omega_k;
    let mut last_change = f64::INFINITY;
    for iteration in 1..=POLE_MAX_ITERATIONS {
        let alpha = polarizability(energy, omega_k, params)?;
        let next = omega_r + (1.0 - 0.5 * density * alpha) * omega_k;
        if !next.is_finite() {
            break;
        }
        last_change = (next - energy).abs();
        energy = next;
        if last_change <= POLE_REL_TOL * next.abs() {
            return finish(energy, iteration);
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: POLE_MAX_ITERATIONS,
        last_change,
    })
}

/// Line-center frequency `n (1 - n² ω₀ʳ)` of the emitted photon.
pub fn line_center_frequency(n: f64, recoil_scale: f64) -> f64 {
    n * (1.0 - n * n * recoil_scale)
}

/// Medium response evaluated self-consistently at the photon line center,
/// i.e. for the mode `ω_c = n (1 - n² ω₀ʳ)` with `n` the index at that mode.
pub fn line_center_response(params: &ModelParams) -> Result<MediumResponse> {
    let mut n = 1.0;
    let mut last_change = f64::INFINITY;
    for _ in 0..OUTER_MAX_ITERATIONS {
        let omega_c = line_center_frequency(n, params.recoil_scale());
        let response = self_consistent_pole(omega_c, params)?;
        last_change = (response.n - n).abs();
        n = response.n;
        if last_change <= 4.0 * f64::EPSILON * n {
            return Ok(response);
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: OUTER_MAX_ITERATIONS,
        last_change,
    })
}

/// Medium density for which `Nα` at the line center equals `n_alpha`.
///
/// `params.density()` is ignored.
pub fn density_for_n_alpha(params: &ModelParams, n_alpha: f64) -> Result<f64> {
    if !n_alpha.is_finite() || n_alpha < 0.0 {
        return Err(Error::invalid(
            "n_alpha",
            format!("must be non-negative, got {n_alpha}"),
        ));
    }
    if n_alpha >= MAX_N_ALPHA {
        return Err(Error::RegimeViolation(format!(
            "n_alpha = {n_alpha} exceeds the small-N*alpha bound {MAX_N_ALPHA}"
        )));
    }
    if n_alpha == 0.0 {
        return Ok(0.0);
    }

    let omega_c = line_center_frequency(1.0 + 0.5 * n_alpha, params.recoil_scale());
    let mut density = 0.0;
    let mut last_change = f64::INFINITY;
    for _ in 0..OUTER_MAX_ITERATIONS {
        let trial = params.with_density(density)?;
        let response = self_consistent_pole(omega_c, &trial)?;
        if !(response.alpha > 0.0) {
            return Err(Error::RegimeViolation(format!(
                "polarizability {} at the line center is not positive; \
                 n_alpha cannot be realized with omega_m = {}",
                response.alpha,
                params.omega_m()
            )));
        }
        let next = n_alpha / response.alpha;
        last_change = (next - density).abs();
        density = next;
        if last_change <= 4.0 * f64::EPSILON * density {
            return Ok(density);
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: OUTER_MAX_ITERATIONS,
        last_change,
    })
}
