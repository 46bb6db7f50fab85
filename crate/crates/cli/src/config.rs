//! Parameter ingestion from flat `key = value` files and command-line flags.

use std::path::{Path, PathBuf};

use recoil_core::{density_for_n_alpha, LineShape, ModelParams, QuadratureSpec};

use crate::CliError;

pub const CONFIG_KEYS: [&str; 6] = [
    "omega_m",
    "gamma0",
    "recoil_scale",
    "density",
    "n_alpha",
    "strict",
];

pub const DEFAULT_OMEGA_M: f64 = 100.0;
pub const DEFAULT_GAMMA0: f64 = 1e-6;
pub const DEFAULT_RECOIL_SCALE: f64 = 1e-9;

/// Parameter values as supplied, before defaults are applied.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamInput {
    pub omega_m: Option<f64>,
    pub gamma0: Option<f64>,
    pub recoil_scale: Option<f64>,
    pub density: Option<f64>,
    pub n_alpha: Option<f64>,
    pub strict: Option<bool>,
}

impl ParamInput {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut input = ParamInput::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let number = || {
                value.parse::<f64>().map_err(|_| {
                    CliError::Usage(format!(
                        "line {}: `{key}` is not a number: {value}",
                        lineno + 1
                    ))
                })
            };
            let slot = match key {
                "omega_m" => &mut input.omega_m,
                "gamma0" => &mut input.gamma0,
                "recoil_scale" => &mut input.recoil_scale,
                "density" => &mut input.density,
                "n_alpha" => &mut input.n_alpha,
                "strict" => {
                    let flag = match value {
                        "true" | "1" | "on" | "yes" => true,
                        "false" | "0" | "off" | "no" => false,
                        _ => {
                            return Err(CliError::Usage(format!(
                                "line {}: `strict` must be true or false, got {value}",
                                lineno + 1
                            )))
                        }
                    };
                    if input.strict.replace(flag).is_some() {
                        return Err(CliError::Usage("duplicate key `strict`".to_string()));
                    }
                    continue;
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown configuration key `{other}`"
                    )))
                }
            };
            if slot.replace(number()?).is_some() {
                return Err(CliError::Usage(format!("duplicate key `{key}`")));
            }
        }
        Ok(input)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Values present in `over` replace those in `self`.
    pub fn overlay(self, over: ParamInput) -> ParamInput {
        ParamInput {
            omega_m: over.omega_m.or(self.omega_m),
            gamma0: over.gamma0.or(self.gamma0),
            recoil_scale: over.recoil_scale.or(self.recoil_scale),
            density: over.density.or(self.density),
            n_alpha: over.n_alpha.or(self.n_alpha),
            strict: over.strict.or(self.strict),
        }
    }

    pub fn resolve(&self) -> Result<ParamSource, CliError> {
        let medium = match (self.density, self.n_alpha) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "`density` and `n_alpha` are mutually exclusive".to_string(),
                ))
            }
            (Some(d), None) => Medium::Density(d),
            (None, Some(x)) => Medium::NAlpha(x),
            (None, None) => Medium::Density(0.0),
        };
        Ok(ParamSource {
            omega_m: self.omega_m.unwrap_or(DEFAULT_OMEGA_M),
            gamma0: self.gamma0.unwrap_or(DEFAULT_GAMMA0),
            recoil_scale: self.recoil_scale.unwrap_or(DEFAULT_RECOIL_SCALE),
            medium,
            strict: self.strict.unwrap_or(false),
        })
    }
}

/// How the medium strength is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium {
    Density(f64),
    /// `Nα` at the line center; the density is solved for.
    NAlpha(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSource {
    pub omega_m: f64,
    pub gamma0: f64,
    pub recoil_scale: f64,
    pub medium: Medium,
    pub strict: bool,
}

impl ParamSource {
    pub fn model(&self) -> Result<ModelParams, CliError> {
        let base = ModelParams::new(self.omega_m, self.gamma0, self.recoil_scale, 0.0)?
            .with_strict(self.strict);
        let density = match self.medium {
            Medium::Density(d) => d,
            Medium::NAlpha(x) => density_for_n_alpha(&base, x)?,
        };
        Ok(base.with_density(density)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Validate,
    Spectrum,
    Recoil,
    Ledger,
    Sweep,
    Oracle,
}

impl CommandKind {
    pub fn format(self) -> OutputFormat {
        match self {
            CommandKind::Spectrum | CommandKind::Sweep => OutputFormat::Csv,
            _ => OutputFormat::Json,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Validate => "validate",
            CommandKind::Spectrum => "spectrum",
            CommandKind::Recoil => "recoil",
            CommandKind::Ledger => "ledger",
            CommandKind::Sweep => "sweep",
            CommandKind::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    NAlpha,
    Gamma0,
    OmegaM,
    RecoilScale,
}

impl std::str::FromStr for SweepAxis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "n_alpha" => Ok(SweepAxis::NAlpha),
            "gamma0" => Ok(SweepAxis::Gamma0),
            "omega_m" => Ok(SweepAxis::OmegaM),
            "recoil_scale" => Ok(SweepAxis::RecoilScale),
            other => Err(CliError::Usage(format!(
                "sweep axis must be one of n_alpha, gamma0, omega_m, recoil_scale; got `{other}`"
            ))),
        }
    }
}

impl SweepAxis {
    pub fn apply(self, source: &ParamSource, value: f64) -> ParamSource {
        let mut s = *source;
        match self {
            SweepAxis::NAlpha => s.medium = Medium::NAlpha(value),
            SweepAxis::Gamma0 => s.gamma0 = value,
            SweepAxis::OmegaM => s.omega_m = value,
            SweepAxis::RecoilScale => s.recoil_scale = value,
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: ParamSource,
    pub command: CommandKind,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub sweep: Option<Sweep>,
    pub quad: QuadratureSpec,
    pub shape: LineShape,
}

impl RunConfig {
    pub fn new(source: ParamSource, command: CommandKind) -> Self {
        Self {
            source,
            command,
            output_path: None,
            output_format: command.format(),
            sweep: None,
            quad: QuadratureSpec::default(),
            shape: LineShape::default(),
        }
    }

    pub fn check(&self) -> Result<(), CliError> {
        if self.output_format != self.command.format() {
            return Err(CliError::Usage(format!(
                "`{}` writes {}",
                self.command.name(),
                match self.command.format() {
                    OutputFormat::Csv => "csv",
                    OutputFormat::Json => "json",
                }
            )));
        }
        match (self.command, &self.sweep) {
            (CommandKind::Sweep, None) => Err(CliError::Usage(
                "sweep needs --axis and --values".to_string(),
            )),
            (CommandKind::Sweep, Some(s)) if s.values.is_empty() => Err(CliError::Usage(
                "sweep needs at least one value".to_string(),
            )),
            _ => Ok(()),
        }?;
        self.quad.validate()?;
        Ok(())
    }
}
