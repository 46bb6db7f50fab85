//! Physical outputs: photon normalization, spectral moments, recoil and the
//! energy balance between field, medium excitation and their interaction.
//!
//! Every quantity is reported twice, as its pole-approximation closed form
//! and as a brute-force line integral over the spectral density.

use serde::Serialize;

use crate::error::Result;
use crate::medium::{line_center_response, MediumResponse};
use crate::model::ModelParams;
use crate::quadrature::{ww_pole_value, OracleReport, QuadratureSpec};
use crate::spectral::{
    medium_excitation_probability, ExcitationProbabilities, LineShape, SpectralDensity,
};

/// `∑_k |b_k|²`.
pub fn total_photon_probability(
    density: &SpectralDensity,
    quad: &QuadratureSpec,
) -> Result<OracleReport> {
    moment(density, 0, quad)
}

/// First moment of the photon spectrum.
pub fn mean_photon_frequency(
    density: &SpectralDensity,
    quad: &QuadratureSpec,
) -> Result<OracleReport> {
    moment(density, 1, quad)
}

/// `∫ ρ(ω) ωᵖ dω` next to its pole value `ω_cᵖ`.
pub fn moment(
    density: &SpectralDensity,
    power: u32,
    quad: &QuadratureSpec,
) -> Result<OracleReport> {
    let closed = ww_pole_value(power, density.center, density.width)?;
    let integral = density.integrate(|w| w.powi(power as i32), quad)?;
    Ok(OracleReport::from_integral(closed, &integral))
}

/// `⟨ħ²k²/2M⟩ = ω₀ʳ ∫ ρ(ω) ω² dω`, in units of `ħω₀`.
pub fn mean_recoil_energy(
    density: &SpectralDensity,
    params: &ModelParams,
    quad: &QuadratureSpec,
) -> Result<OracleReport> {
    Ok(moment(density, 2, quad)?.scaled(params.recoil_scale()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecoilStats {
    /// `⟨ħ²k²/2M⟩` in units of `ħω₀`.
    pub mean_recoil_energy: f64,
    /// `√⟨p²⟩` in units of `ħω₀/c`. The mean momentum vector vanishes by isotropy.
    pub mean_momentum_magnitude: f64,
    /// Mean recoil energy over the vacuum recoil energy `ħω₀ʳ`.
    pub recoil_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Recoil {
    pub stats: RecoilStats,
    /// Closed-form and quadrature values of `⟨k²⟩ / k₀²`.
    pub oracle: OracleReport,
}

/// Recoil statistics from the quadrature second moment of the photon spectrum.
pub fn recoil(density: &SpectralDensity, quad: &QuadratureSpec) -> Result<Recoil> {
    let oracle = moment(density, 2, quad)?;
    let k_sq = oracle.quadrature;
    Ok(Recoil {
        stats: RecoilStats {
            mean_recoil_energy: density.params.recoil_scale() * k_sq,
            mean_momentum_magnitude: k_sq.sqrt(),
            recoil_ratio: k_sq,
        },
        oracle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerTerm {
    pub closed_form: f64,
    pub quadrature: f64,
    pub abs_error: f64,
}

impl LedgerTerm {
    fn new(closed_form: f64, quadrature: f64) -> Self {
        Self {
            closed_form,
            quadrature,
            abs_error: (closed_form - quadrature).abs(),
        }
    }
}

/// Energy balance in units of `ħω₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLedger {
    pub field: LedgerTerm,
    pub medium: LedgerTerm,
    pub interaction: LedgerTerm,
    pub total: LedgerTerm,
}

/// Field, medium-excitation and interaction energies.
///
/// The interaction term is the cross-term result `-Nα(ω_c) ω_c` at the line
/// center; integrating it over the line changes it only at `O(γ₀)`.
pub fn energy_ledger(density: &SpectralDensity, quad: &QuadratureSpec) -> Result<EnergyLedger> {
    let params = &density.params;
    let n_alpha = density.response.n_alpha;

    let field = LedgerTerm::new(
        1.0 + 0.5 * n_alpha,
        mean_photon_frequency(density, quad)?.quadrature,
    );

    let medium_quad = if params.density() == 0.0 {
        0.0
    } else {
        let omega_m = params.omega_m();
        density
            .integrate(
                |w| match density.excitation_ratios(w) {
                    Ok(r) => r.rot * omega_m + r.anti * (omega_m + 2.0 * w),
                    Err(_) => f64::NAN,
                },
                quad,
            )?
            .value
    };
    let medium = LedgerTerm::new(0.5 * n_alpha, medium_quad);

    let interaction = LedgerTerm::new(-n_alpha, -n_alpha * density.center);

    let total = LedgerTerm::new(
        field.closed_form + medium.closed_form + interaction.closed_form,
        field.quadrature + medium.quadrature + interaction.quadrature,
    );
    Ok(EnergyLedger {
        field,
        medium,
        interaction,
        total,
    })
}

/// Everything needed to evaluate observables for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Analysis {
    pub params: ModelParams,
    pub response: MediumResponse,
    pub density: SpectralDensity,
}

impl Analysis {
    pub fn new(params: &ModelParams, shape: LineShape) -> Result<Self> {
        let response = line_center_response(params)?;
        let density = SpectralDensity::new(params, &response, shape);
        Ok(Self {
            params: *params,
            response,
            density,
        })
    }

    pub fn normalization(&self, quad: &QuadratureSpec) -> Result<OracleReport> {
        total_photon_probability(&self.density, quad)
    }

    pub fn mean_frequency(&self, quad: &QuadratureSpec) -> Result<OracleReport> {
        mean_photon_frequency(&self.density, quad)
    }

    pub fn recoil(&self, quad: &QuadratureSpec) -> Result<Recoil> {
        recoil(&self.density, quad)
    }

    pub fn ledger(&self, quad: &QuadratureSpec) -> Result<EnergyLedger> {
        energy_ledger(&self.density, quad)
    }

    pub fn excitation(&self, quad: &QuadratureSpec) -> Result<ExcitationProbabilities> {
        medium_excitation_probability(&self.density, quad)
    }
}
