use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Args, Parser, Subcommand, ValueEnum};
use recoil_cli::{execute, CliError, CommandKind, OutputFormat, ParamInput, RunConfig, Sweep};

#[derive(Parser)]
#[command(
    name = "recoil",
    version,
    about = "Photon recoil of an emitter in a dilute dielectric"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the regime checks and print the report
    Validate(Common),
    /// Tabulate the photon density and excitation ratios across the line
    Spectrum(Common),
    /// Mean recoil relative to the vacuum value
    Recoil(Common),
    /// Field, medium and interaction energies
    Ledger(Common),
    /// Recoil and ledger total along one parameter axis
    Sweep {
        #[command(flatten)]
        common: Common,
        /// n_alpha, gamma0, omega_m or recoil_scale
        #[arg(long)]
        axis: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        values: Vec<f64>,
    },
    /// Closed-form moments next to their quadrature values
    Oracle(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

impl From<Toggle> for bool {
    fn from(t: Toggle) -> bool {
        matches!(t, Toggle::On)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` parameter file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Medium transition frequency in units of the emitter frequency
    #[arg(long)]
    omega_m: Option<f64>,
    /// Vacuum decay rate of the emitter
    #[arg(long)]
    gamma0: Option<f64>,
    /// Recoil frequency of the emitter, ħω₀/2Mc²
    #[arg(long)]
    recoil_scale: Option<f64>,
    /// Medium number density
    #[arg(long)]
    density: Option<f64>,
    /// N·α at the line center; the density is solved for
    #[arg(long)]
    n_alpha: Option<f64>,
    /// Treat failed regime checks as errors
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Integration half-window in line widths
    #[arg(long = "quad.window")]
    quad_window: Option<f64>,
    #[arg(long = "quad.rtol")]
    quad_rtol: Option<f64>,
    /// Analytic Lorentzian tails beyond the window
    #[arg(long = "quad.tail", value_enum)]
    quad_tail: Option<Toggle>,
    /// Hold the decay rate at its line-center value
    #[arg(long = "frozen-gamma", value_enum)]
    frozen_gamma: Option<Toggle>,
}

impl Common {
    fn into_config(self, command: CommandKind) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => ParamInput::read(path)?,
            None => ParamInput::default(),
        };
        let flags = ParamInput {
            omega_m: self.omega_m,
            gamma0: self.gamma0,
            recoil_scale: self.recoil_scale,
            density: self.density,
            n_alpha: self.n_alpha,
            strict: self.strict.then_some(true),
        };
        let mut cfg = RunConfig::new(file.overlay(flags).resolve()?, command);
        cfg.output_path = self.out;
        if let Some(f) = self.format {
            cfg.output_format = match f {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
        }
        if let Some(w) = self.quad_window {
            cfg.quad.window_half_width = w;
        }
        if let Some(t) = self.quad_rtol {
            cfg.quad.rel_tol = t;
        }
        if let Some(t) = self.quad_tail {
            cfg.quad.tail_correction = t.into();
        }
        if let Some(t) = self.frozen_gamma {
            cfg.shape.frozen_gamma = t.into();
        }
        Ok(cfg)
    }
}

fn build(cli: Cli) -> Result<RunConfig, CliError> {
    match cli.command {
        Cmd::Validate(c) => c.into_config(CommandKind::Validate),
        Cmd::Spectrum(c) => c.into_config(CommandKind::Spectrum),
        Cmd::Recoil(c) => c.into_config(CommandKind::Recoil),
        Cmd::Ledger(c) => c.into_config(CommandKind::Ledger),
        Cmd::Oracle(c) => c.into_config(CommandKind::Oracle),
        Cmd::Sweep {
            common,
            axis,
            values,
        } => {
            let mut cfg = common.into_config(CommandKind::Sweep)?;
            cfg.sweep = Some(Sweep {
                axis: axis.parse()?,
                values,
            });
            Ok(cfg)
        }
    }
}

fn write_output(cfg: &RunConfig, body: &str) -> anyhow::Result<()> {
    match &cfg.output_path {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush().context("writing stdout")
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let cfg = match build(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };

    match execute(&cfg) {
        Ok(outcome) => {
            if let Err(e) = write_output(&cfg, &outcome.body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
