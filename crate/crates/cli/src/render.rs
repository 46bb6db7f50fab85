//! Text renderings. CSV floats use 17 significant digits, JSON uses the
//! shortest round-trip representation; both end lines with `\n`.

use std::fmt::Write as _;

use recoil_core::{Analysis, OracleReport, Recoil, SpectralDensity};
use serde::Serialize;

pub const SPECTRUM_HEADER: &str = "omega,rho,rot_ratio,anti_ratio";
pub const SWEEP_HEADER: &str = "value,n,recoil_ratio,ledger_total";
pub const SPECTRUM_POINTS: usize = 2001;
/// Half-span of the spectrum grid in line widths.
pub const SPECTRUM_HALF_SPAN: f64 = 10.0;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

pub fn spectrum_csv(density: &SpectralDensity) -> recoil_core::Result<String> {
    let mut out = String::with_capacity(SPECTRUM_POINTS * 96);
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    let last = (SPECTRUM_POINTS - 1) as f64;
    for i in 0..SPECTRUM_POINTS {
        let offset = SPECTRUM_HALF_SPAN * (2.0 * i as f64 / last - 1.0);
        let omega = density.center + offset * density.width;
        let r = density.excitation_ratios(omega)?;
        let _ = writeln!(
            out,
            "{},{},{},{}",
            float(omega),
            float(density.rho(omega)),
            float(r.rot),
            float(r.anti)
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub n: f64,
    pub recoil_ratio: f64,
    pub ledger_total: f64,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            float(r.value),
            float(r.n),
            float(r.recoil_ratio),
            float(r.ledger_total)
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecoilOutput {
    pub recoil_ratio: f64,
    pub n: f64,
    pub n_squared: f64,
    pub gamma0: f64,
    pub n_alpha: f64,
    pub mean_recoil_energy: f64,
    pub mean_momentum_magnitude: f64,
    /// `⟨k²⟩` closed form against quadrature.
    pub oracle: OracleReport,
}

impl RecoilOutput {
    pub fn new(a: &Analysis, r: &Recoil) -> Self {
        let n = a.response.n;
        Self {
            recoil_ratio: r.stats.recoil_ratio,
            n,
            n_squared: n * n,
            gamma0: a.params.gamma0(),
            n_alpha: a.response.n_alpha,
            mean_recoil_energy: r.stats.mean_recoil_energy,
            mean_momentum_magnitude: r.stats.mean_momentum_magnitude,
            oracle: r.oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleOutput {
    pub normalization: OracleReport,
    pub first_moment: OracleReport,
    pub second_moment: OracleReport,
}
