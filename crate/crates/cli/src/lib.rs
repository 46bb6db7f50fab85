//! Command execution behind the `recoil` binary.
//!
//! Each command renders its whole output into a string so that the binary
//! only decides where the bytes go.

pub mod config;
pub mod render;

use rayon::prelude::*;
use recoil_core::{validate, Analysis, ModelParams, Verdict};

pub use config::{
    CommandKind, Medium, OutputFormat, ParamInput, ParamSource, RunConfig, Sweep, SweepAxis,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("regime check failed in strict mode: {0}")]
    Strict(String),

    #[error(transparent)]
    Numerical(#[from] recoil_core::Error),
}

impl CliError {
    /// 1 for configuration problems, 2 for strict-mode validation failures,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Strict(_) => 2,
            CliError::Numerical(recoil_core::Error::InvalidParameter { .. }) => 1,
            CliError::Numerical(_) => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, exit_code: 0 }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.check()?;
    match cfg.command {
        CommandKind::Validate => {
            let report = validate(&cfg.source.model()?)?;
            let exit_code = if report.overall == Verdict::Fail {
                2
            } else {
                0
            };
            Ok(Outcome {
                body: render::json(&report),
                exit_code,
            })
        }
        CommandKind::Sweep => {
            let sweep = cfg.sweep.as_ref().expect("checked above");
            let rows = sweep
                .values
                .par_iter()
                .map(|&v| sweep_point(cfg, &sweep.axis.apply(&cfg.source, v), v))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::ok(render::sweep_csv(&rows)))
        }
        CommandKind::Spectrum => {
            let a = analysis(cfg, &cfg.source)?;
            Ok(Outcome::ok(render::spectrum_csv(&a.density)?))
        }
        CommandKind::Recoil => {
            let a = analysis(cfg, &cfg.source)?;
            let r = a.recoil(&cfg.quad)?;
            Ok(Outcome::ok(render::json(&render::RecoilOutput::new(
                &a, &r,
            ))))
        }
        CommandKind::Ledger => {
            let a = analysis(cfg, &cfg.source)?;
            Ok(Outcome::ok(render::json(&a.ledger(&cfg.quad)?)))
        }
        CommandKind::Oracle => {
            let a = analysis(cfg, &cfg.source)?;
            let out = render::OracleOutput {
                normalization: a.normalization(&cfg.quad)?,
                first_moment: a.mean_frequency(&cfg.quad)?,
                second_moment: recoil_core::observables::moment(&a.density, 2, &cfg.quad)?,
            };
            Ok(Outcome::ok(render::json(&out)))
        }
    }
}

/// Builds the parameter set and refuses to continue past a strict-mode failure.
fn checked_params(source: &ParamSource) -> Result<ModelParams, CliError> {
    let params = source.model()?;
    let report = validate(&params)?;
    let failed: Vec<_> = report.failed().map(|c| c.name).collect();
    match report.overall {
        Verdict::Fail => Err(CliError::Strict(failed.join(", "))),
        Verdict::Warn => {
            for c in report.failed() {
                log::warn!(
                    "regime check `{}` failed: {} vs {}",
                    c.name,
                    c.measured,
                    c.threshold
                );
            }
            Ok(params)
        }
        Verdict::Pass => Ok(params),
    }
}

fn analysis(cfg: &RunConfig, source: &ParamSource) -> Result<Analysis, CliError> {
    Ok(Analysis::new(&checked_params(source)?, cfg.shape)?)
}

fn sweep_point(
    cfg: &RunConfig,
    source: &ParamSource,
    value: f64,
) -> Result<render::SweepRow, CliError> {
    let a = analysis(cfg, source)?;
    let recoil = a.recoil(&cfg.quad)?;
    let ledger = a.ledger(&cfg.quad)?;
    Ok(render::SweepRow {
        value,
        n: a.response.n,
        recoil_ratio: recoil.stats.recoil_ratio,
        ledger_total: ledger.total.quadrature,
    })
}
