//! Physical inputs and regime checks.
//!
//! Everything is expressed in natural units with the source-atom transition
//! frequency as the unit of frequency: `ω₀ = ħ = c = 1`. Couplings follow the
//! Gaussian convention, under which `ħ V |g_k|² = 2π ω_k` for every mode and the
//! dipole strength is tied to the vacuum decay rate by `γ(ω) = 2 μ² ω³ / 3`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Advisory regime thresholds. Only `strict` mode turns them into failures.
pub const FAR_DETUNED_MIN_OMEGA_M: f64 = 10.0;
pub const NARROW_LINE_MAX_GAMMA0: f64 = 1e-3;
pub const SMALL_RECOIL_MAX: f64 = 1e-3;
/// Upper bound on `N λ₀³` with `λ₀ = 2π` in natural units.
pub const DILUTE_MAX_N_LAMBDA3: f64 = 1.0;

/// Dipole strength `μ²` that reproduces the vacuum decay rate `gamma0` at `ω = 1`.
pub fn mu_sq_from_gamma0(gamma0: f64) -> Result<f64> {
    if !gamma0.is_finite() || gamma0 <= 0.0 {
        return Err(Error::invalid(
            "gamma0",
            format!("must be positive, got {gamma0}"),
        ));
    }
    Ok(1.5 * gamma0)
}

/// Spontaneous decay rate `γ(ω) = 2 μ² ω³ / 3` of a dipole of strength `mu_sq`.
pub fn decay_rate(mu_sq: f64, omega: f64) -> f64 {
    2.0 * mu_sq * omega.powi(3) / 3.0
}

/// All physical inputs of one calculation.
///
/// Fields are private so that `mu_sq` can never drift away from `gamma0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    omega_m: f64,
    gamma0: f64,
    recoil_scale: f64,
    density: f64,
    mu_sq: f64,
    strict: bool,
}

impl ModelParams {
    pub fn new(omega_m: f64, gamma0: f64, recoil_scale: f64, density: f64) -> Result<Self> {
        check_finite("omega_m", omega_m)?;
        check_finite("gamma0", gamma0)?;
        check_finite("recoil_scale", recoil_scale)?;
        check_finite("density", density)?;
        if omega_m <= 1.0 {
            return Err(Error::invalid(
                "omega_m",
                format!("medium must lie above the source line (omega_m > 1), got {omega_m}"),
            ));
        }
        if gamma0 >= 1.0 {
            return Err(Error::invalid(
                "gamma0",
                format!("must be below 1, got {gamma0}"),
            ));
        }
        if recoil_scale < 0.0 {
            return Err(Error::invalid("recoil_scale", "must be non-negative"));
        }
        if density < 0.0 {
            return Err(Error::invalid("density", "must be non-negative"));
        }
        let mu_sq = mu_sq_from_gamma0(gamma0)?;
        Ok(Self {
            omega_m,
            gamma0,
            recoil_scale,
            density,
            mu_sq,
            strict: false,
        })
    }

    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn with_density(self, density: f64) -> Result<Self> {
        Ok(
            Self::new(self.omega_m, self.gamma0, self.recoil_scale, density)?
                .with_strict(self.strict),
        )
    }

    pub fn omega_m(&self) -> f64 {
        self.omega_m
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn recoil_scale(&self) -> f64 {
        self.recoil_scale
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn mu_sq(&self) -> f64 {
        self.mu_sq
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    /// Recoil frequency `ω_kʳ = ω₀ʳ k²` for a photon of frequency `omega_k` (`k = ω_k`).
    pub fn recoil_frequency(&self, omega_k: f64) -> f64 {
        self.recoil_scale * omega_k * omega_k
    }

    /// Vacuum decay rate at frequency `omega`.
    pub fn decay_rate(&self, omega: f64) -> f64 {
        decay_rate(self.mu_sq, omega)
    }

    /// `N λ₀³` with `λ₀ = 2π c / ω₀`.
    pub fn n_lambda_cubed(&self) -> f64 {
        self.density * (2.0 * PI).powi(3)
    }
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {value}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeCheck {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<RegimeCheck>,
    pub overall: Verdict,
}

impl ValidationReport {
    pub fn failed(&self) -> impl Iterator<Item = &RegimeCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs the four regime checks: dilute, far-detuned, narrow-line, small-recoil.
pub fn validate(params: &ModelParams) -> Result<ValidationReport> {
    // Fields cannot be corrupted through the public API, but the report must
    // never be produced from a record that violates the hard invariants.
    let params = ModelParams::new(
        params.omega_m,
        params.gamma0,
        params.recoil_scale,
        params.density,
    )?
    .with_strict(params.strict);

    let below = |name, measured: f64, threshold: f64| RegimeCheck {
        name,
        passed: measured < threshold,
        measured,
        threshold,
    };
    let at_most = |name, measured: f64, threshold: f64| RegimeCheck {
        name,
        passed: measured <= threshold,
        measured,
        threshold,
    };

    let checks = vec![
        below("dilute", params.n_lambda_cubed(), DILUTE_MAX_N_LAMBDA3),
        RegimeCheck {
            name: "far_detuned",
            passed: params.omega_m >= FAR_DETUNED_MIN_OMEGA_M,
            measured: params.omega_m,
            threshold: FAR_DETUNED_MIN_OMEGA_M,
        },
        at_most("narrow_line", params.gamma0, NARROW_LINE_MAX_GAMMA0),
        at_most("small_recoil", params.recoil_scale, SMALL_RECOIL_MAX),
    ];

    let any_failed = checks.iter().any(|c| !c.passed);
    let overall = match (any_failed, params.strict) {
        (false, _) => Verdict::Pass,
        (true, true) => Verdict::Fail,
        (true, false) => Verdict::Warn,
    };
    Ok(ValidationReport { checks, overall })
}
