//! Photon spectrum of the dressed emission line and the accompanying
//! medium-excitation densities.
//!
//! The emitted photon density is
//!
//! ```text
//! ρ(ω) = C ω³ / ( [ω/n - (1 - n² ω₀ʳ)]² + n² γ_c² )
//! ```
//!
//! centred at `ω_c = n (1 - n² ω₀ʳ)` with half-width `n² γ_c`. The
//! polarization sum over `|μ₀·ε|²` contributes `8π/3 μ²`, which together with
//! the mode density and the coupling collapses into `C = γ_c / (π ω_c³)`;
//! this makes the pole-approximation integral exactly one. The same angular
//! factor appears in the medium-excitation densities and cancels in their
//! ratios to `ρ`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::medium::{self, line_center_frequency, MediumResponse, RESONANCE_GUARD};
use crate::model::ModelParams;
use crate::quadrature::{integrate_line, LineIntegral, QuadratureSpec};

/// Which factors of the line shape are held at their line-center values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineShape {
    /// Use `γ(ω_c)` in the denominator instead of `γ(ω) = γ₀ ω³`.
    pub frozen_gamma: bool,
    /// Use the line-center index everywhere instead of solving the dressed
    /// pole for every mode.
    pub frozen_n: bool,
}

impl Default for LineShape {
    fn default() -> Self {
        Self {
            frozen_gamma: true,
            frozen_n: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralDensity {
    /// Line-center frequency `n (1 - n² ω₀ʳ)`.
    pub center: f64,
    /// Half-width at half-maximum in `ω`, `n² γ_c`.
    pub width: f64,
    pub prefactor: f64,
    pub n: f64,
    /// Decay rate at the line center, `γ₀ ω_c³`.
    pub gamma_c: f64,
    pub shape: LineShape,
    pub params: ModelParams,
    /// Medium response at the line center.
    pub response: MediumResponse,
}

/// Photon spectral density with the default (fully frozen) line shape.
pub fn photon_density(params: &ModelParams, response: &MediumResponse) -> SpectralDensity {
    SpectralDensity::new(params, response, LineShape::default())
}

impl SpectralDensity {
    pub fn new(params: &ModelParams, response: &MediumResponse, shape: LineShape) -> Self {
        let n = response.n;
        let center = line_center_frequency(n, params.recoil_scale());
        let gamma_c = params.decay_rate(center);
        Self {
            center,
            width: n * n * gamma_c,
            prefactor: gamma_c / (PI * center.powi(3)),
            n,
            gamma_c,
            shape,
            params: *params,
            response: *response,
        }
    }

    /// `ρ(ω)`; zero for `ω ≤ 0`. Returns NaN where the per-mode pole cannot
    /// be solved (only possible with `frozen_n = false`).
    pub fn rho(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            return 0.0;
        }
        let gamma = if self.shape.frozen_gamma {
            self.gamma_c
        } else {
            self.params.decay_rate(omega)
        };
        let detuning = if self.shape.frozen_n {
            // ω/n - (1 - n² ω₀ʳ), written to avoid cancellation near the peak
            (omega - self.center) / self.n
        } else {
            match medium::self_consistent_pole(omega, &self.params) {
                Ok(r) => r.pole_energy - 1.0,
                Err(_) => return f64::NAN,
            }
        };
        let n_gamma = self.n * gamma;
        self.prefactor * omega.powi(3) / (detuning * detuning + n_gamma * n_gamma)
    }

    pub fn excitation_ratios(&self, omega: f64) -> Result<ExcitationRatios> {
        excitation_ratios(omega, &self.params, &self.response)
    }

    /// `∫ ρ(ω) g(ω) dω` over the line.
    pub fn integrate<G>(&self, g: G, quad: &QuadratureSpec) -> Result<LineIntegral>
    where
        G: Fn(f64) -> f64,
    {
        integrate_line(|w| self.rho(w) * g(w), self.center, self.width, quad)
    }
}

/// Medium-excitation density per unit photon density at frequency `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExcitationRatios {
    /// Medium atom excited, no photon left (photon absorbed).
    pub rot: f64,
    /// Medium atom excited together with two photons.
    pub anti: f64,
}

/// Ratios `|b_m(k)|² / |b_k|²` and `|b_mkk(k)|² / |b_k|²`, summed over sublevels.
pub fn excitation_ratios(
    omega: f64,
    params: &ModelParams,
    response: &MediumResponse,
) -> Result<ExcitationRatios> {
    let shrink = 1.0 - 0.5 * response.n_alpha;
    let rotating = shrink * omega - params.omega_m();
    let anti_rotating = rotating - 2.0 * omega;
    for d in [rotating, anti_rotating] {
        if !(d.abs() >= RESONANCE_GUARD) {
            return Err(Error::MediumResonance {
                energy: omega,
                denominator: d,
            });
        }
    }
    let strength = params.density() * medium::coupling_strength(omega) * params.mu_sq();
    Ok(ExcitationRatios {
        rot: strength / (rotating * rotating),
        anti: strength / (anti_rotating * anti_rotating),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExcitationProbabilities {
    pub rotating: f64,
    pub anti_rotating: f64,
}

impl ExcitationProbabilities {
    pub fn total(&self) -> f64 {
        self.rotating + self.anti_rotating
    }
}

/// Total probabilities of finding a medium atom excited, by channel.
pub fn medium_excitation_probability(
    density: &SpectralDensity,
    quad: &QuadratureSpec,
) -> Result<ExcitationProbabilities> {
    if density.params.density() == 0.0 {
        return Ok(ExcitationProbabilities {
            rotating: 0.0,
            anti_rotating: 0.0,
        });
    }
    let ratio = |w: f64, pick: fn(&ExcitationRatios) -> f64| {
        density
            .excitation_ratios(w)
            .map(|r| pick(&r))
            .unwrap_or(f64::NAN)
    };
    let rotating = density.integrate(|w| ratio(w, |r| r.rot), quad)?.value;
    let anti_rotating = density.integrate(|w| ratio(w, |r| r.anti), quad)?.value;
    Ok(ExcitationProbabilities {
        rotating,
        anti_rotating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::{density_for_n_alpha, line_center_response};
    use approx::assert_relative_eq;

    fn line(n_alpha: f64, gamma0: f64, recoil_scale: f64) -> SpectralDensity {
        let base = ModelParams::new(100.0, gamma0, recoil_scale, 0.0).unwrap();
        let p = base
            .with_density(density_for_n_alpha(&base, n_alpha).unwrap())
            .unwrap();
        let r = line_center_response(&p).unwrap();
        photon_density(&p, &r)
    }

    #[test]
    fn vacuum_line() {
        let d = line(0.0, 1e-6, 0.0);
        assert_eq!(d.center, 1.0);
        assert_relative_eq!(d.width, 1e-6, max_relative = 1e-15);
        assert_eq!(d.n, 1.0);
        // Lorentzian peak value 1/(πγ)
        assert_relative_eq!(d.rho(1.0), 1.0 / (PI * 1e-6), max_relative = 1e-15);
    }

    #[test]
    fn dressed_line_center_and_width() {
        let d = line(0.02, 1e-6, 0.0);
        assert_relative_eq!(d.n, 1.01, max_relative = 1e-13);
        assert_relative_eq!(d.center, 1.01, max_relative = 1e-13);
        let gamma_c = 1e-6 * 1.01f64.powi(3);
        assert_relative_eq!(d.width, 1.01 * 1.01 * gamma_c, max_relative = 1e-12);

        let d = line(0.02, 1e-6, 1e-6);
        assert_relative_eq!(d.center, 1.01 * (1.0 - 1.0201e-6), max_relative = 1e-13);
    }

    #[test]
    fn density_non_negative() {
        let d = line(0.05, 1e-4, 1e-6);
        for i in 0..1000 {
            let w = i as f64 * 0.005;
            assert!(d.rho(w) >= 0.0);
        }
        assert_eq!(d.rho(-1.0), 0.0);
    }

    #[test]
    fn ratios_vanish_without_medium() {
        let d = line(0.0, 1e-6, 0.0);
        let r = d.excitation_ratios(1.0).unwrap();
        assert_eq!((r.rot, r.anti), (0.0, 0.0));
    }

    #[test]
    fn ratio_example_value() {
        let p = ModelParams::new(100.0, 1e-6, 0.0, 2.6525e4).unwrap();
        let response = MediumResponse {
            omega_k: 1.0,
            alpha: 0.02 / 2.6525e4,
            n_alpha: 0.02,
            n: 1.01,
            pole_energy: 0.99,
            iterations: 1,
        };
        let r = excitation_ratios(1.0, &p, &response).unwrap();
        let expected = 2.0 * PI * 2.6525e4 * 1.5e-6 / (0.99f64 - 100.0).powi(2);
        assert_relative_eq!(r.rot, expected, max_relative = 1e-14);
        assert_relative_eq!(r.rot, 2.55e-5, max_relative = 5e-3);
    }

    #[test]
    fn ratio_scales_like_n_alpha() {
        // self-consistent medium with 2πNμ² = 0.25
        let p = ModelParams::new(100.0, 1e-6, 0.0, 2.6525e4).unwrap();
        let response = line_center_response(&p).unwrap();
        let r = excitation_ratios(1.0, &p, &response).unwrap();
        let estimate = response.n_alpha / 4.0 * (1.0 / 100.0);
        assert_relative_eq!(r.rot, estimate, max_relative = 0.1);
    }

    #[test]
    fn anti_rotating_suppressed() {
        let p = ModelParams::new(100.0, 1e-6, 0.0, 2.6525e4).unwrap();
        let response = line_center_response(&p).unwrap();
        let shrink = 1.0 - 0.5 * response.n_alpha;
        for &w in &[0.5, 1.0, 2.0] {
            let r = excitation_ratios(w, &p, &response).unwrap();
            let expected = ((100.0 - shrink * w) / (100.0 + (2.0 - shrink) * w)).powi(2);
            assert_relative_eq!(r.anti / r.rot, expected, max_relative = 1e-12);
            assert!(r.anti < r.rot);
        }
    }

    #[test]
    fn ratio_resonance() {
        let p = ModelParams::new(100.0, 1e-6, 0.0, 1.0).unwrap();
        let response = line_center_response(&p).unwrap();
        let shrink = 1.0 - 0.5 * response.n_alpha;
        assert!(matches!(
            excitation_ratios(100.0 / shrink, &p, &response),
            Err(Error::MediumResonance { .. })
        ));
    }

    #[test]
    fn excitation_probability_vacuum() {
        let d = line(0.0, 1e-6, 0.0);
        let p = medium_excitation_probability(&d, &QuadratureSpec::default()).unwrap();
        assert_eq!(p.total(), 0.0);
    }

    #[test]
    fn excitation_probability_small() {
        let d = line(0.02, 1e-6, 0.0);
        let p = medium_excitation_probability(&d, &QuadratureSpec::default()).unwrap();
        let scale = 0.02 * d.center / 100.0;
        assert!(p.total() > 0.5 * scale && p.total() < 2.0 * scale, "{p:?}");
        assert!(p.rotating > p.anti_rotating);
    }

    #[test]
    fn unfrozen_shapes_stay_close() {
        let frozen = line(0.02, 1e-6, 1e-9);
        let loose = SpectralDensity::new(
            &frozen.params,
            &frozen.response,
            LineShape {
                frozen_gamma: false,
                frozen_n: false,
            },
        );
        let q = QuadratureSpec::default();
        let norm = loose.integrate(|_| 1.0, &q).unwrap().value;
        // O(Nα²) shift of the pole moves the peak by ~100 widths; the weight stays O(1)
        assert!((norm - 1.0).abs() < 1e-3, "{norm}");
    }
}
