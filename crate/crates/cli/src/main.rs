//! Command-line front end for the localization-length solver.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{ForceArgs, ProfileArgs, SweepArgs};
use config::{ModeSelection, OutputFormat, Overrides, DENSITY_ENV};

#[derive(Parser, Debug)]
#[command(
    name = "gravloc",
    version,
    about = "Gravitational localization length of condensed-matter lumps"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Stationarity condition: paper, derived or both
    #[arg(long, global = true)]
    mode: Option<ModeSelection>,
    /// Reference density in proton masses per cm³
    #[arg(long, global = true)]
    density: Option<f64>,
    /// Output format: json, csv or table
    #[arg(long, global = true)]
    output: Option<OutputFormat>,
    /// Significant digits in output (3 to 17)
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// File of `key = value` defaults (mode, density, output, precision)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the physical constants in use
    Constants,
    /// Solve for the localization length of one lump
    Solve {
        /// Mass in units of the proton mass
        #[arg(long)]
        mu: f64,
        /// Inner dispersion in cm (default: from the reference density)
        #[arg(long)]
        lambda0: Option<f64>,
    },
    /// Solve over a logarithmic grid of masses
    Sweep {
        #[arg(long)]
        mu_min: f64,
        #[arg(long)]
        mu_max: f64,
        #[arg(long, default_value_t = 10)]
        per_decade: usize,
        #[arg(long)]
        lambda0: Option<f64>,
        /// Write the result here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the full solution with both asymptotic laws
    Asymptotics {
        #[arg(long)]
        mu: f64,
    },
    /// Crossover mass and width of the transition region
    Crossover,
    /// Total energy against trial width
    EnergyProfile {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        lambda0: Option<f64>,
        #[arg(long)]
        lp_min: f64,
        #[arg(long)]
        lp_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Interaction energy and force between two Gaussian sources
    ForceLaw {
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long)]
        d_min: f64,
        #[arg(long)]
        d_max: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        m1: f64,
        #[arg(long, default_value_t = 1.0)]
        m2: f64,
    },
    /// Closed-form ground-state energy against its k-space integral
    E0Check {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        mass: f64,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<gravloc::Error> for Failure {
    fn from(e: gravloc::Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<config::ConfigError> for Failure {
    fn from(e: config::ConfigError) -> Self {
        Failure::Usage(e.0)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let flags = Overrides {
        mode: cli.global.mode,
        density: cli.global.density,
        output: cli.global.output,
        precision: cli.global.precision,
    };
    let file = match &cli.global.config {
        Some(path) => config::load_config(path)?,
        None => Overrides::default(),
    };
    let env_density = std::env::var(DENSITY_ENV).ok();
    let cfg = config::resolve(&flags, &file, env_density.as_deref())?;
    let consts = gravloc::constants().with_density(cfg.density)?;

    let doc = match cli.command {
        Command::Constants => commands::constants(&consts),
        Command::Solve { mu, lambda0 } => commands::solve(&consts, &cfg, mu, lambda0)?,
        Command::Sweep {
            mu_min,
            mu_max,
            per_decade,
            lambda0,
            out,
        } => {
            let args = SweepArgs {
                mu_min,
                mu_max,
                per_decade,
                lambda0,
            };
            let text = commands::run_sweep(&consts, &cfg, &args)?;
            return match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    Failure::Usage(format!("invalid out: cannot write {}: {e}", path.display()))
                }),
                None => emit(&text),
            };
        }
        Command::Asymptotics { mu } => commands::asymptotics(&consts, &cfg, mu)?,
        Command::Crossover => commands::crossover(&consts, &cfg)?,
        Command::EnergyProfile {
            mu,
            lambda0,
            lp_min,
            lp_max,
            points,
        } => commands::energy_profile(
            &consts,
            &cfg,
            &ProfileArgs {
                mu,
                lambda0,
                lp_min,
                lp_max,
                points,
            },
        )?,
        Command::ForceLaw {
            sigma,
            d_min,
            d_max,
            points,
            m1,
            m2,
        } => commands::force_law(
            &consts,
            &ForceArgs {
                sigma,
                d_min,
                d_max,
                points,
                m1,
                m2,
            },
        )?,
        Command::E0Check { lambda, mass } => commands::e0_check(&consts, lambda, mass)?,
    };
    emit(&doc.render(cfg.output, cfg.precision))
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
